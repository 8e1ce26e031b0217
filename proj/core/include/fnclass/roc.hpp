#pragma once
// Empirical CDFs, ROC curves over specificity-complement levels p, the
// Mann-Whitney AUC and its asymptotic confidence interval.
//
// Quantile convention: Q(q) = inf{s in sample : F(s) > q}, with Q(1) taken
// as the sample maximum. The ROC curve at level p is
//     R(p) = 1 - F_pos(Q_neg(1 - p)),   R(1) = 1,
// i.e. the sensitivity of "positive iff score > Q_neg(1 - p)".

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fnclass {

class Ecdf {
public:
    explicit Ecdf(std::span<const double> sample);

    // #{s <= x} / n
    double operator()(double x) const noexcept;
    std::size_t count_le(double x) const noexcept;
    std::size_t size() const noexcept { return sorted_.size(); }
    std::span<const double> sorted() const noexcept { return sorted_; }

private:
    std::vector<double> sorted_;
};

double ecdf_quantile(const Ecdf& F, double q);

// Integer tally of a two-sample comparison: wins count 2, ties count 1.
// value() = twice_wins / (2 * pairs).
struct PairTally {
    std::uint64_t twice_wins = 0;
    std::uint64_t pairs = 0;

    double value() const noexcept {
        return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(pairs));
    }
};

// Pairs (x in lows, y in highs) with x < y, ties 1/2. `lows_sorted` must be
// sorted ascending. O((|lows| + |highs|) log |lows|).
PairTally tally_less(std::span<const double> lows_sorted, std::span<const double> highs);

struct RocCurve {
    std::vector<double> p_grid;
    std::vector<double> values;
};

struct AucEstimate {
    double auc = 0.5;
    double variance = 0.0;  // of sqrt(nc1) * (AUC_hat - AUC)
    double ci_low = 0.5;
    double ci_high = 0.5;
    double level = 0.95;
    std::size_t nc0 = 0;
    std::size_t nc1 = 0;

    double length() const noexcept { return ci_high - ci_low; }
    bool covers(double a) const noexcept { return ci_low <= a && a <= ci_high; }
};

std::vector<double> default_p_grid(std::size_t points = 201);

double roc_value(const Ecdf& neg, const Ecdf& pos, double p);
RocCurve roc_curve(std::span<const double> neg, std::span<const double> pos, std::span<const double> p_grid);
RocCurve roc_curve(std::span<const double> neg, std::span<const double> pos);

// sup_p |R_a(p) - R_b(p)| for two empirical step ROC curves, evaluated
// exactly at one interior point of every constancy interval.
double roc_sup_distance(const Ecdf& neg_a, const Ecdf& pos_a, const Ecdf& neg_b, const Ecdf& pos_b);

// P(pos > neg) + 1/2 P(pos = neg), by ranks.
PairTally auc_tally(std::span<const double> neg, std::span<const double> pos);
double auc(std::span<const double> neg, std::span<const double> pos);

// Plug-in variance of sqrt(nc1) * AUC_hat:
//   ||F_neg||_{F_pos} + lambda^2 ||F_pos||_{F_neg},   lambda^2 = nc1 / nc0,
// where ||F||_G = Var_{X~G} F(X), evaluated with the empirical CDFs.
double auc_variance(std::span<const double> neg, std::span<const double> pos);

AucEstimate auc_ci(std::span<const double> neg, std::span<const double> pos, double level = 0.95);

// Standard normal quantile.
double normal_quantile(double u);

}  // namespace fnclass
