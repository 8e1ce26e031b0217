#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fnclass/errors.hpp"
#include "fnclass/roc.hpp"
#include "oracles.hpp"

using namespace fnclass;

namespace {

std::vector<double> draws(std::size_t n, std::mt19937_64& rng, double mu = 0.0, double sd = 1.0) {
    std::normal_distribution<double> d(mu, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

// Riemann midpoint sum of the ROC step curve on `points` cells.
double integrate_roc(const std::vector<double>& neg, const std::vector<double>& pos, std::size_t points) {
    const Ecdf Fn(neg), Fp(pos);
    double s = 0.0;
    for (std::size_t k = 0; k < points; ++k) s += roc_value(Fn, Fp, (static_cast<double>(k) + 0.5) / points);
    return s / static_cast<double>(points);
}

double sd_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST(Ecdf, QuantileConvention) {
    const std::vector<double> s{3.0, 1.0, 2.0};
    const Ecdf F(s);
    EXPECT_EQ(ecdf_quantile(F, 0.0), 1.0);
    EXPECT_EQ(ecdf_quantile(F, 1.0), 3.0);
    EXPECT_EQ(ecdf_quantile(F, 1.0 / 3.0), 2.0);  // F(1) = 1/3 is not > 1/3
    EXPECT_EQ(F(2.0), 2.0 / 3.0);
    EXPECT_EQ(F(0.5), 0.0);
    EXPECT_THROW(ecdf_quantile(F, 1.1), DomainError);
    EXPECT_THROW(Ecdf(std::vector<double>{}), InsufficientDataError);
}

TEST(Ecdf, QuantileMatchesLinearScan) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> s(50);
    for (auto& x : s) x = u(rng);
    const Ecdf F(s);
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.0, 0.01, 0.37, 0.5, 0.98, 0.999}) {
        double scan = sorted.back();
        for (double x : sorted) {
            // F(x) by counting, no library call
            const auto c = std::count_if(s.begin(), s.end(), [&](double y) { return y <= x; });
            if (static_cast<double>(c) / 50.0 > q) {
                scan = x;
                break;
            }
        }
        EXPECT_EQ(ecdf_quantile(F, q), scan) << q;
    }
}

TEST(Roc, HandExample) {
    const std::vector<double> neg{0.1, 0.4}, pos{0.3, 0.8};
    const std::vector<double> p{0.25, 0.5, 0.75};
    const auto r = roc_curve(neg, pos, p);
    EXPECT_EQ(r.values[0], 0.5);  // Q_neg(0.75) = 0.4, F_pos(0.4) = 1/2
    EXPECT_EQ(r.values[1], 0.5);  // Q_neg(0.5) = 0.4
    EXPECT_EQ(r.values[2], 1.0);  // Q_neg(0.25) = 0.1, F_pos(0.1) = 0
}

TEST(Roc, NoDiscriminationOnDiagonal) {
    std::mt19937_64 rng(2);
    const auto s = draws(40, rng);
    const auto r = roc_curve(s, s);
    for (std::size_t k = 0; k < r.p_grid.size(); ++k) EXPECT_LE(std::abs(r.values[k] - r.p_grid[k]), 1.0 / 40 + 1e-12);
}

TEST(Roc, PerfectSeparation) {
    const std::vector<double> neg{0.0, 0.1, 0.2}, pos{0.5, 0.7};
    const auto r = roc_curve(neg, pos);
    for (std::size_t k = 1; k < r.p_grid.size(); ++k) EXPECT_EQ(r.values[k], 1.0);
    EXPECT_EQ(auc(neg, pos), 1.0);
}

TEST(Roc, MonotoneWithBoundaries) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const auto neg = draws(1 + trial % 13, rng), pos = draws(1 + trial % 7, rng, 0.5);
        const auto r = roc_curve(neg, pos);
        EXPECT_EQ(r.values.back(), 1.0);
        EXPECT_GE(r.values.front(), 0.0);
        for (std::size_t k = 1; k < r.values.size(); ++k) EXPECT_GE(r.values[k], r.values[k - 1]);
        for (double v : r.values) EXPECT_LE(v, 1.0);
    }
}

TEST(Auc, TieConventionAndDuality) {
    const std::vector<double> same{1.0, 2.0, 2.0, 5.0};
    EXPECT_EQ(auc(same, same), 0.5);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        auto neg = draws(1 + trial % 9, rng), pos = draws(1 + trial % 11, rng, 0.3);
        for (auto& x : neg) x = std::round(x * 2) / 2;  // ties
        for (auto& x : pos) x = std::round(x * 2) / 2;
        EXPECT_EQ(auc(neg, pos), oracle::mann_whitney(neg, pos));
        const auto a = auc_tally(neg, pos), b = auc_tally(pos, neg);
        EXPECT_EQ(a.twice_wins + b.twice_wins, 2 * a.pairs);  // exact complement
        EXPECT_DOUBLE_EQ(auc(neg, pos) + auc(pos, neg), 1.0);
    }
}

TEST(Auc, EqualsIntegralOfRocWithoutTies) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const auto neg = draws(1 + trial % 20, rng), pos = draws(1 + (trial * 7) % 20, rng, 0.4);
        EXPECT_NEAR(auc(neg, pos), integrate_roc(neg, pos, 100000), 1e-4);
    }
}

TEST(Auc, RankInvariance) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        const auto neg = draws(5 + trial, rng), pos = draws(3 + trial, rng, 0.6);
        std::vector<double> tn, tp;
        for (double x : neg) tn.push_back(std::exp(x) + x * x * x);
        for (double x : pos) tp.push_back(std::exp(x) + x * x * x);
        EXPECT_EQ(auc(neg, pos), auc(tn, tp));
        EXPECT_EQ(auc_variance(neg, pos), auc_variance(tn, tp));
    }
}

TEST(AucVariance, HandExample) {
    const std::vector<double> neg{1.0, 3.0}, pos{2.0, 4.0};
    EXPECT_DOUBLE_EQ(auc_variance(neg, pos), 0.125);
}

TEST(AucVariance, DegenerateEcdfsGiveZero) {
    const std::vector<double> neg(7, 0.25), pos(4, 0.75);
    EXPECT_EQ(auc_variance(neg, pos), 0.0);
    const auto e = auc_ci(neg, pos);
    EXPECT_EQ(e.ci_low, e.auc);
    EXPECT_EQ(e.ci_high, e.auc);
    EXPECT_EQ(e.auc, 1.0);
}

// The plug-in variance of sqrt(nc1) * AUC must match the Monte Carlo variance
// when the cohorts are unbalanced and the two eCDF terms differ in size.
TEST(AucVariance, MatchesMonteCarloUnbalanced) {
    std::mt19937_64 rng(12);
    const std::size_t n0 = 160, n1 = 40, reps = 4000;
    std::vector<double> a(reps);
    double plug = 0.0, printed = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto neg = draws(n0, rng, 0.0, 1.0), pos = draws(n1, rng, 1.0, 3.0);
        a[r] = auc(neg, pos);
        plug += auc_variance(neg, pos);
        // the other placement of lambda^2, for contrast
        const Ecdf Fn(neg), Fp(pos);
        auto var_at = [](const Ecdf& F, const std::vector<double>& xs) {
            std::vector<double> v;
            for (double x : xs) v.push_back(F(x));
            const double s = sd_of(v);
            return s * s * (static_cast<double>(xs.size()) - 1) / static_cast<double>(xs.size());
        };
        const double lambda2 = static_cast<double>(n1) / static_cast<double>(n0);
        printed += lambda2 * var_at(Fn, pos) + var_at(Fp, neg);
    }
    plug /= reps;
    printed /= reps;
    const double sd = sd_of(a);
    const double empirical = sd * sd * static_cast<double>(n1);
    EXPECT_NEAR(plug / empirical, 1.0, 0.1);
    EXPECT_GT(std::abs(printed / empirical - 1.0), 0.25);
}

TEST(AucVariance, StabilisesWithSampleSize) {
    std::mt19937_64 rng(13);
    std::vector<double> spread;
    for (std::size_t n : {100u, 400u, 1600u}) {
        std::vector<double> v;
        for (int r = 0; r < 30; ++r) v.push_back(auc_variance(draws(n, rng), draws(n, rng, 1.0)));
        spread.push_back(sd_of(v));
    }
    EXPECT_GT(spread[0], spread[1]);
    EXPECT_GT(spread[1], spread[2]);
}

TEST(AucCi, ClippedAndOrdered) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const auto neg = draws(3 + trial % 5, rng), pos = draws(3 + trial % 4, rng, 2.0);
        const auto e = auc_ci(neg, pos, 0.9);
        EXPECT_GE(e.ci_low, 0.0);
        EXPECT_LE(e.ci_high, 1.0);
        EXPECT_LE(e.ci_low, e.auc);
        EXPECT_GE(e.ci_high, e.auc);
        EXPECT_EQ(e.nc0, neg.size());
        EXPECT_EQ(e.nc1, pos.size());
    }
    EXPECT_THROW(auc_ci(std::vector<double>{1.0}, std::vector<double>{2.0}, 1.0), DomainError);
}

TEST(AucCi, HalfWidthFormula) {
    const std::vector<double> neg{0.1, 0.5, 0.2, 0.9, 0.4}, pos{0.3, 0.8, 0.7};
    const auto e = auc_ci(neg, pos, 0.95);
    const double half = normal_quantile(0.975) * std::sqrt(auc_variance(neg, pos) / 3.0);
    EXPECT_NEAR(e.ci_high - e.auc, std::min(half, 1.0 - e.auc), 1e-15);
    EXPECT_NEAR(e.auc - e.ci_low, std::min(half, e.auc), 1e-15);
    EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
}

TEST(RocSupDistance, AgreesWithDenseEvaluation) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const auto na = draws(7 + trial, rng), pa = draws(5 + trial, rng, 0.5);
        const auto nb = draws(11, rng), pb = draws(13, rng, 1.0);
        const Ecdf Na(na), Pa(pa), Nb(nb), Pb(pb);
        const double exact = roc_sup_distance(Na, Pa, Nb, Pb);
        double dense = 0.0;
        for (int k = 1; k < 20000; ++k) {
            const double p = k / 20000.0;
            dense = std::max(dense, std::abs(roc_value(Na, Pa, p) - roc_value(Nb, Pb, p)));
        }
        EXPECT_GE(exact + 1e-15, dense);
        EXPECT_NEAR(exact, dense, 1e-12);
        EXPECT_EQ(roc_sup_distance(Na, Pa, Na, Pa), 0.0);
    }
}
