#pragma once
// Trajectory tables (CSV in, CSV out) and dependency-free SVG plots.
//
// Canonical input is long format with header `id,label,t,value`, one row per
// observation. Wide format has header `id,label,<t_1>,...,<t_m>` where the
// time columns are named by their numeric time value.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fnclass/functional.hpp"
#include "fnclass/roc.hpp"

namespace fnclass {

struct Series {
    std::string id;
    std::optional<Label> label;
    std::vector<double> t;
    std::vector<double> values;
    long first_line = 0;
};

struct TrajectoryTable {
    std::vector<Series> series;  // in order of first appearance
};

struct TableOptions {
    bool wide = false;
    bool require_labels = true;  // unlabeled rows use an empty or "NA" label
};

TrajectoryTable read_table(std::istream& in, const TableOptions& options = {});
TrajectoryTable read_table(const std::filesystem::path& path, const TableOptions& options = {});

struct IngestOptions {
    TableOptions table{};
    std::optional<std::size_t> resample_to;  // equispaced points over the common range
};

struct IngestResult {
    LabeledSample sample;
    std::vector<std::string> ids;
    std::vector<std::string> diagnostics;
};

// Builds a labelled sample on one common grid. Series already sharing a grid
// are taken as is; otherwise `resample_to` is required and every series is
// linearly interpolated onto an equispaced grid over the intersection of the
// observed ranges.
IngestResult ingest_table(const TrajectoryTable& table, const IngestOptions& options = {});
IngestResult ingest_csv(const std::filesystem::path& path, const IngestOptions& options = {});

// Places one series on `grid` (exact copy when the time points coincide).
Trajectory series_on_grid(const Series& s, const GridPtr& grid);

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

void write_long_csv(std::ostream& out, const LabeledSample& sample, std::span<const std::string> ids = {});

// --- CSV emitters ------------------------------------------------------------

void write_roc_csv(std::ostream& out, const RocCurve& roc);
void write_auc_summary_header(std::ostream& out);
void write_auc_summary_row(std::ostream& out, const AucEstimate& e);

// --- SVG ---------------------------------------------------------------------

// Thin grey rays, a thick mean curve, optional highlighted reference curve.
std::string roc_svg(std::span<const RocCurve> rays, const RocCurve* mean, const RocCurve* highlight = nullptr,
                    const std::string& title = "");

struct StripGroup {
    std::string name;
    std::vector<double> values;
};

// Violin-style summary: jittered strip of points per group with quartile
// bars and the median marked. Values are assumed to lie in [0, 1].
std::string violin_svg(std::span<const StripGroup> groups, const std::string& title = "");

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fnclass
