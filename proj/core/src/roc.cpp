#include "fnclass/roc.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "fnclass/errors.hpp"

namespace fnclass {

Ecdf::Ecdf(std::span<const double> sample) : sorted_(sample.begin(), sample.end()) {
    if (sorted_.empty()) throw InsufficientDataError("empirical CDF of an empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

std::size_t Ecdf::count_le(double x) const noexcept {
    return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

double Ecdf::operator()(double x) const noexcept {
    return static_cast<double>(count_le(x)) / static_cast<double>(sorted_.size());
}

double ecdf_quantile(const Ecdf& F, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    const auto s = F.sorted();
    const double n = static_cast<double>(s.size());
    // First order statistic x_(k) (0-based) with (k + 1) / n > q. Ties are
    // harmless: a tied block shares the value, and any earlier distinct value
    // has F <= k / n <= q.
    std::size_t lo = 0, hi = s.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (static_cast<double>(mid + 1) / n > q)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo < s.size() ? s[lo] : s.back();
}

PairTally tally_less(std::span<const double> lows_sorted, std::span<const double> highs) {
    PairTally t;
    t.pairs = static_cast<std::uint64_t>(lows_sorted.size()) * highs.size();
    for (double y : highs) {
        const auto [first, last] = std::equal_range(lows_sorted.begin(), lows_sorted.end(), y);
        t.twice_wins += 2 * static_cast<std::uint64_t>(first - lows_sorted.begin()) +
                        static_cast<std::uint64_t>(last - first);
    }
    return t;
}

std::vector<double> default_p_grid(std::size_t points) {
    if (points < 2) throw DomainError("p-grid needs at least 2 points");
    std::vector<double> p(points);
    for (std::size_t k = 0; k < points; ++k) p[k] = static_cast<double>(k) / static_cast<double>(points - 1);
    p.back() = 1.0;
    return p;
}

double roc_value(const Ecdf& neg, const Ecdf& pos, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("ROC level p must lie in [0, 1]");
    if (p == 1.0) return 1.0;
    return 1.0 - pos(ecdf_quantile(neg, 1.0 - p));
}

RocCurve roc_curve(std::span<const double> neg, std::span<const double> pos, std::span<const double> p_grid) {
    if (neg.empty() || pos.empty()) throw InsufficientDataError("ROC curve needs both negative and positive scores");
    const Ecdf Fn(neg), Fp(pos);
    RocCurve r;
    r.p_grid.assign(p_grid.begin(), p_grid.end());
    r.values.reserve(p_grid.size());
    for (double p : p_grid) r.values.push_back(roc_value(Fn, Fp, p));
    return r;
}

RocCurve roc_curve(std::span<const double> neg, std::span<const double> pos) {
    const auto grid = default_p_grid();
    return roc_curve(neg, pos, grid);
}

double roc_sup_distance(const Ecdf& neg_a, const Ecdf& pos_a, const Ecdf& neg_b, const Ecdf& pos_b) {
    // Each curve is constant on (k-1)/n0 < p < k/n0. Evaluate at p = 0, p = 1
    // and at midpoints between consecutive breakpoints of the merged set.
    std::vector<double> breaks;
    const auto add_breaks = [&](std::size_t n) {
        for (std::size_t k = 0; k <= n; ++k) breaks.push_back(static_cast<double>(k) / static_cast<double>(n));
    };
    add_breaks(neg_a.size());
    add_breaks(neg_b.size());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double sup = 0.0;
    const auto probe = [&](double p) {
        sup = std::max(sup, std::abs(roc_value(neg_a, pos_a, p) - roc_value(neg_b, pos_b, p)));
    };
    probe(0.0);
    probe(1.0);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) probe(0.5 * (breaks[k] + breaks[k + 1]));
    return sup;
}

PairTally auc_tally(std::span<const double> neg, std::span<const double> pos) {
    if (neg.empty() || pos.empty()) throw InsufficientDataError("AUC needs both negative and positive scores");
    std::vector<double> sorted_neg(neg.begin(), neg.end());
    std::sort(sorted_neg.begin(), sorted_neg.end());
    return tally_less(sorted_neg, pos);
}

double auc(std::span<const double> neg, std::span<const double> pos) { return auc_tally(neg, pos).value(); }

namespace {

__extension__ typedef unsigned __int128 u128;

// Var_{x in at} F(x) with F the eCDF of `of`. Accumulated on the integer
// counts so that a constant F gives exactly zero.
double ecdf_spread(const Ecdf& of, std::span<const double> at) {
    u128 s = 0, s2 = 0;
    for (double x : at) {
        const u128 c = of.count_le(x);
        s += c;
        s2 += c * c;
    }
    const u128 n = at.size();
    const u128 num = n * s2 - s * s;
    const double m = static_cast<double>(of.size());
    const double nd = static_cast<double>(at.size());
    return static_cast<double>(num) / (nd * nd * m * m);
}

}  // namespace

double auc_variance(std::span<const double> neg, std::span<const double> pos) {
    if (neg.empty() || pos.empty()) throw InsufficientDataError("AUC variance needs both negative and positive scores");
    const Ecdf Fn(neg), Fp(pos);
    const double lambda2 = static_cast<double>(pos.size()) / static_cast<double>(neg.size());
    return ecdf_spread(Fn, pos) + lambda2 * ecdf_spread(Fp, neg);
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("normal quantile needs u in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), u);
}

AucEstimate auc_ci(std::span<const double> neg, std::span<const double> pos, double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    AucEstimate e;
    e.auc = auc(neg, pos);
    e.variance = auc_variance(neg, pos);
    e.level = level;
    e.nc0 = neg.size();
    e.nc1 = pos.size();
    const double half = normal_quantile(0.5 * (1.0 + level)) * std::sqrt(e.variance / static_cast<double>(e.nc1));
    e.ci_low = std::clamp(e.auc - half, 0.0, 1.0);
    e.ci_high = std::clamp(e.auc + half, 0.0, 1.0);
    return e;
}

}  // namespace fnclass
