#include "fnclass/baselines.hpp"

#include <algorithm>

#include "fnclass/errors.hpp"
#include "fnclass/harness.hpp"

namespace fnclass {

std::string to_string(ReducerKind k) {
    switch (k) {
        case ReducerKind::Min: return "Min";
        case ReducerKind::Max: return "Max";
        case ReducerKind::Int: return "Int";
    }
    return "?";
}

ReducerKind reducer_from_string(const std::string& name) {
    if (name == "Min" || name == "min") return ReducerKind::Min;
    if (name == "Max" || name == "max") return ReducerKind::Max;
    if (name == "Int" || name == "int") return ReducerKind::Int;
    throw UsageError("unknown reducer '" + name + "'");
}

std::string to_string(Orientation o) {
    switch (o) {
        case Orientation::HigherIsPositive: return "higher";
        case Orientation::LowerIsPositive: return "lower";
        case Orientation::Neutral: return "neutral";
    }
    return "?";
}

double reduce(std::span<const double> values, const Grid& grid, ReducerKind kind) {
    if (values.size() != grid.size()) throw DimensionError("trajectory length does not match the grid");
    switch (kind) {
        case ReducerKind::Min: return *std::min_element(values.begin(), values.end());
        case ReducerKind::Max: return *std::max_element(values.begin(), values.end());
        case ReducerKind::Int: return integrate(values, grid);
    }
    return 0.0;
}

double reduce(const Trajectory& f, ReducerKind kind) { return reduce(f.values(), *f.grid(), kind); }

std::vector<double> reduce_all(const LabeledSample& sample, ReducerKind kind) {
    std::vector<double> out(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) out[i] = reduce(sample.row(i), *sample.grid(), kind);
    return out;
}

BaselineResult baseline_auc(const LabeledSample& sample, ReducerKind kind, double level) {
    if (sample.n0() == 0 || sample.n1() == 0) throw ClassError("baseline AUC needs both classes");
    const auto values = reduce_all(sample, kind);
    std::vector<double> neg, pos;
    for (std::size_t i = 0; i < values.size(); ++i)
        (sample.label(i) == Label::Positive ? pos : neg).push_back(values[i]);

    BaselineResult r;
    r.estimate = auc_ci(neg, pos, level);
    r.raw_auc = r.estimate.auc;
    const auto tally = auc_tally(neg, pos);
    if (tally.twice_wins > tally.pairs) {
        r.orientation = Orientation::HigherIsPositive;
    } else if (tally.twice_wins < tally.pairs) {
        r.orientation = Orientation::LowerIsPositive;
        const double lo = r.estimate.ci_low, hi = r.estimate.ci_high;
        r.estimate.auc = 1.0 - r.raw_auc;
        r.estimate.ci_low = 1.0 - hi;
        r.estimate.ci_high = 1.0 - lo;
    }
    return r;
}

BaselineResult baseline_auc_split(const LabeledSample& sample, ReducerKind kind, const SplitConfig& config,
                                  Rng& rng) {
    const Split s = split_sample(sample, config, rng);
    return baseline_auc(s.test, kind, config.level);
}

}  // namespace fnclass
