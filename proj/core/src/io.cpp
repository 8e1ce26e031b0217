#include "fnclass/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fnclass/errors.hpp"

namespace fnclass {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    s = s.substr(b, e - b);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_number(const std::string& field, const char* what, long line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (!field.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc() || ptr != last)
        throw ParseError(std::string("field '") + what + "' is not numeric: '" + field + "'", line);
    if (!std::isfinite(v)) throw ParseError(std::string("field '") + what + "' is not finite", line);
    return v;
}

std::optional<Label> parse_label(const std::string& field, bool required, const std::string& id, long line) {
    if (field.empty() || field == "NA" || field == "na") {
        if (required) throw ParseError("missing label for id '" + id + "'", line);
        return std::nullopt;
    }
    if (field == "0") return Label::Negative;
    if (field == "1") return Label::Positive;
    throw ParseError("label for id '" + id + "' must be 0 or 1, got '" + field + "'", line);
}

void append_observation(Series& s, std::optional<Label> label, double t, double v, long line) {
    if (s.t.empty()) {
        s.label = label;
        s.first_line = line;
    } else if (s.label != label) {
        throw ParseError("id '" + s.id + "' has inconsistent labels", line);
    }
    if (!s.t.empty() && !(t > s.t.back()))
        throw ParseError("id '" + s.id + "': time points must be strictly increasing", line);
    s.t.push_back(t);
    s.values.push_back(v);
}

std::size_t column_index(const std::vector<std::string>& header, const char* name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError(std::string("missing column '") + name + "'", 1);
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

TrajectoryTable read_table(std::istream& in, const TableOptions& options) {
    TrajectoryTable table;
    std::unordered_map<std::string, std::size_t> by_id;
    std::string line;
    long lineno = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        header = split_fields(line);
    }
    if (header.empty()) throw ParseError("empty input: expected a header row");

    const std::size_t c_id = column_index(header, "id");
    const std::size_t c_label = column_index(header, "label");
    std::size_t c_t = 0, c_value = 0;
    std::vector<std::pair<std::size_t, double>> time_columns;
    if (options.wide) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == c_id || c == c_label) continue;
            time_columns.emplace_back(c, parse_number(header[c], "time column header", lineno));
        }
        if (time_columns.size() < 2) throw ParseError("wide format needs at least two time columns", lineno);
    } else {
        c_t = column_index(header, "t");
        c_value = column_index(header, "value");
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(f.size()),
                             lineno);
        const std::string& id = f[c_id];
        if (id.empty()) throw ParseError("empty id", lineno);
        const auto label = parse_label(f[c_label], options.require_labels, id, lineno);
        auto [it, inserted] = by_id.try_emplace(id, table.series.size());
        if (inserted) table.series.push_back(Series{id, label, {}, {}, lineno});
        Series& s = table.series[it->second];
        if (options.wide) {
            if (!inserted) throw ParseError("id '" + id + "' appears twice in wide format", lineno);
            for (const auto& [c, t] : time_columns) append_observation(s, label, t, parse_number(f[c], "value", lineno), lineno);
        } else {
            append_observation(s, label, parse_number(f[c_t], "t", lineno), parse_number(f[c_value], "value", lineno),
                               lineno);
        }
    }
    return table;
}

TrajectoryTable read_table(const std::filesystem::path& path, const TableOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return read_table(in, options);
}

Trajectory series_on_grid(const Series& s, const GridPtr& grid) {
    if (s.t.size() < 2) throw DimensionError("id '" + s.id + "' has fewer than 2 observations");
    const auto pts = grid->points();
    if (std::equal(s.t.begin(), s.t.end(), pts.begin(), pts.end())) return Trajectory(grid, s.values);
    const Trajectory own(make_grid(Grid(s.t)), s.values);
    try {
        return resample(own, grid);
    } catch (const RangeError& e) {
        throw RangeError("id '" + s.id + "': " + e.what());
    }
}

IngestResult ingest_table(const TrajectoryTable& table, const IngestOptions& options) {
    if (table.series.empty()) throw ClassError("no trajectories in input");
    for (const auto& s : table.series) {
        if (!s.label) throw ParseError("id '" + s.id + "' has no label", s.first_line);
        if (s.t.size() < 2) throw DimensionError("id '" + s.id + "' has fewer than 2 observations");
    }

    const auto& first = table.series.front().t;
    const bool shared = std::all_of(table.series.begin(), table.series.end(),
                                    [&](const Series& s) { return s.t == first; });
    IngestResult out{LabeledSample(nullptr), {}, {}};
    GridPtr grid;
    if (shared && !options.resample_to) {
        grid = make_grid(Grid(first));
    } else {
        if (!options.resample_to)
            throw DimensionError("trajectories are observed on different time grids; resample them to a common grid");
        double lo = -INFINITY, hi = INFINITY;
        for (const auto& s : table.series) {
            lo = std::max(lo, s.t.front());
            hi = std::min(hi, s.t.back());
        }
        if (!(lo < hi)) throw RangeError("observed time ranges do not overlap");
        grid = make_grid(Grid::equispaced(lo, hi, *options.resample_to));
        out.diagnostics.push_back("resampled to " + std::to_string(*options.resample_to) + " points on [" +
                                  format_double(lo) + ", " + format_double(hi) + "]");
    }

    out.sample = LabeledSample(grid);
    for (const auto& s : table.series) {
        out.sample.add(series_on_grid(s, grid), *s.label);
        out.ids.push_back(s.id);
        out.diagnostics.push_back(s.id + ": " + std::to_string(s.t.size()) + " points on [" + format_double(s.t.front()) +
                                  ", " + format_double(s.t.back()) + "], label " + std::to_string(to_int(*s.label)));
    }
    if (out.sample.n0() == 0) throw ClassError("input has no negative (label 0) trajectories");
    if (out.sample.n1() == 0) throw ClassError("input has no positive (label 1) trajectories");
    return out;
}

IngestResult ingest_csv(const std::filesystem::path& path, const IngestOptions& options) {
    return ingest_table(read_table(path, options.table), options);
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_long_csv(std::ostream& out, const LabeledSample& sample, std::span<const std::string> ids) {
    out << "id,label,t,value\n";
    const auto t = sample.grid()->points();
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const std::string id = i < ids.size() ? ids[i] : "s" + std::to_string(i + 1);
        const auto row = sample.row(i);
        for (std::size_t k = 0; k < row.size(); ++k)
            out << id << ',' << to_int(sample.label(i)) << ',' << format_double(t[k]) << ',' << format_double(row[k])
                << '\n';
    }
}

void write_roc_csv(std::ostream& out, const RocCurve& roc) {
    out << "p,sensitivity\n";
    for (std::size_t k = 0; k < roc.p_grid.size(); ++k)
        out << format_double(roc.p_grid[k]) << ',' << format_double(roc.values[k]) << '\n';
}

void write_auc_summary_header(std::ostream& out) { out << "auc,var,ci_low,ci_high,level\n"; }

void write_auc_summary_row(std::ostream& out, const AucEstimate& e) {
    out << format_double(e.auc) << ',' << format_double(e.variance) << ',' << format_double(e.ci_low) << ','
        << format_double(e.ci_high) << ',' << format_double(e.level) << '\n';
}

namespace {

constexpr double kW = 480, kH = 480, kPad = 50;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string svg_open(double w, double h, const std::string& title) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(w) << "\" height=\"" << fixed(h)
      << "\" viewBox=\"0 0 " << fixed(w) << ' ' << fixed(h) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        o << "<text x=\"" << fixed(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          << "font-size=\"14\">" << escape_xml(title) << "</text>\n";
    return o.str();
}

std::string roc_polyline(const RocCurve& c, const char* stroke, double width, double opacity) {
    std::ostringstream o;
    o << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fixed(width)
      << "\" stroke-opacity=\"" << fixed(opacity) << "\" points=\"";
    for (std::size_t k = 0; k < c.p_grid.size(); ++k) {
        if (k) o << ' ';
        o << fixed(kPad + c.p_grid[k] * kW) << ',' << fixed(kPad + (1.0 - c.values[k]) * kH);
    }
    o << "\"/>\n";
    return o.str();
}

}  // namespace

std::string roc_svg(std::span<const RocCurve> rays, const RocCurve* mean, const RocCurve* highlight,
                    const std::string& title) {
    std::ostringstream o;
    o << svg_open(kW + 2 * kPad, kH + 2 * kPad, title);
    o << "<rect x=\"" << fixed(kPad) << "\" y=\"" << fixed(kPad) << "\" width=\"" << fixed(kW) << "\" height=\""
      << fixed(kH) << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << fixed(kPad) << "\" y1=\"" << fixed(kPad + kH) << "\" x2=\"" << fixed(kPad + kW)
      << "\" y2=\"" << fixed(kPad) << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
    for (const auto& r : rays) o << roc_polyline(r, "#7f7f7f", 1.0, 0.25);
    if (highlight) o << roc_polyline(*highlight, "#d62728", 2.5, 1.0);
    if (mean) o << roc_polyline(*mean, "#1f77b4", 3.0, 1.0);
    o << "<text x=\"" << fixed(kPad + kW / 2) << "\" y=\"" << fixed(kH + 2 * kPad - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1 - specificity (p)</text>\n";
    o << "<text x=\"14\" y=\"" << fixed(kPad + kH / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\" transform=\"rotate(-90 14 " << fixed(kPad + kH / 2) << ")\">sensitivity</text>\n";
    o << "</svg>\n";
    return o.str();
}

std::string violin_svg(std::span<const StripGroup> groups, const std::string& title) {
    const double col = 90.0;
    const double w = 2 * kPad + col * static_cast<double>(std::max<std::size_t>(groups.size(), 1));
    std::ostringstream o;
    o << svg_open(w, kH + 2 * kPad, title);
    const auto y_of = [](double v) { return kPad + (1.0 - std::clamp(v, 0.0, 1.0)) * kH; };
    for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        o << "<line x1=\"" << fixed(kPad) << "\" y1=\"" << fixed(y_of(tick)) << "\" x2=\"" << fixed(w - kPad)
          << "\" y2=\"" << fixed(y_of(tick)) << "\" stroke=\"#ddd\"/>\n"
          << "<text x=\"" << fixed(kPad - 6) << "\" y=\"" << fixed(y_of(tick) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fixed(tick) << "</text>\n";
    }
    std::uint64_t jitter_state = 0x2545F4914F6CDD1DULL;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double cx = kPad + col * (static_cast<double>(g) + 0.5);
        std::vector<double> v = groups[g].values;
        std::sort(v.begin(), v.end());
        for (double x : v) {
            jitter_state = jitter_state * 6364136223846793005ULL + 1442695040888963407ULL;
            const double u = static_cast<double>(jitter_state >> 11) / 9007199254740992.0;
            o << "<circle cx=\"" << fixed(cx + (u - 0.5) * col * 0.6) << "\" cy=\"" << fixed(y_of(x))
              << "\" r=\"1.6\" fill=\"#1f77b4\" fill-opacity=\"0.35\"/>\n";
        }
        if (!v.empty()) {
            const auto q = [&](double p) {
                const double h = p * static_cast<double>(v.size() - 1);
                const auto lo = static_cast<std::size_t>(std::floor(h));
                const std::size_t hi = std::min(lo + 1, v.size() - 1);
                return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
            };
            o << "<line x1=\"" << fixed(cx) << "\" y1=\"" << fixed(y_of(q(0.25))) << "\" x2=\"" << fixed(cx)
              << "\" y2=\"" << fixed(y_of(q(0.75))) << "\" stroke=\"black\" stroke-width=\"4\"/>\n"
              << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(y_of(q(0.5)))
              << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
        }
        o << "<text x=\"" << fixed(cx) << "\" y=\"" << fixed(kH + kPad + 18)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(groups[g].name)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

}  // namespace fnclass
