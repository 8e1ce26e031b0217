#pragma once
// Generative Models I-IV (variants a-d), their noise processes, and the
// Monte Carlo studies built on them.
//
// Mean curves on T = [-1, 1]:
//   I    negative sin(pi t), positive (7/5) sin(pi t)          (a: both sin)
//   II   negative b t^2 1{t<=0} - b t^2 1{t>0}, positive a t^2,
//        a, b ~ 1/2 N(-2, 1/4^2) + 1/2 N(2, 1/4^2) per curve
//   III  normal density phi_{mu,sigma}(t), mu ~ N(-0.15, 0.1^2) (negative)
//        or N(0.15, 0.1^2) (positive), sigma = |N(0.5, 0.2^2)|
//   IV   negative -(1/2) t^3 / (t-2)^2, positive +(1/2) t^3 / (t-2)^2
//        (a: both negative)
// Noise by variant:
//   a  Brownian (rate A) on both groups for I and IV; none for II and III
//   b  Brownian rate A on both groups
//   c  Brownian rate A on negatives, rate B = 2A on positives
//   d  exponential-marginal variogram process on both groups
//
// Nominal rates are 1/200 (A) and 1/100 (B), multiplied by noise_scale.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fnclass/functional.hpp"
#include "fnclass/random.hpp"
#include "fnclass/roc.hpp"
#include "fnclass/transforms.hpp"

namespace fnclass {

enum class ModelFamily { I, II, III, IV };
enum class ModelVariant { a, b, c, d };

// Noise multiplier applied to the nominal rates; see README ("Noise scale").
inline constexpr double kDefaultNoiseScale = 32.0;
inline constexpr double kNominalRateA = 1.0 / 200.0;
inline constexpr double kNominalRateB = 1.0 / 100.0;

struct ModelSpec {
    ModelFamily family = ModelFamily::I;
    ModelVariant variant = ModelVariant::a;
    GridPtr grid = default_grid();
    double noise_scale = kDefaultNoiseScale;
    double corr_length = 0.25;

    // "I-a" ... "IV-d"
    static ModelSpec parse(const std::string& name);
    std::string name() const;
};

enum class NoiseKind { None, BrownianScaled, ExpVariogram };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::None;
    double rate = 0.0;          // Brownian variance rate, or variogram marginal variance
    double corr_length = 0.25;  // ExpVariogram only
};

NoiseSpec noise_for(const ModelSpec& model, Label label);

// BrownianScaled: zero at the left endpoint, independent N(0, rate * dt)
// increments. ExpVariogram: stationary Gaussian process with correlation
// exp(-|s - t| / corr_length), mapped to unit-exponential marginals by
// -log(Phi(z)), centred and scaled by sqrt(rate).
std::vector<double> gen_noise(const NoiseSpec& spec, const Grid& grid, Rng& rng);

Trajectory gen_trajectory(const ModelSpec& model, Label label, Rng& rng);

// n0 negatives followed by n1 positives.
LabeledSample gen_sample(const ModelSpec& model, std::size_t n0, std::size_t n1, Rng& rng);

struct SampleSize {
    std::size_t n0 = 50;
    std::size_t n1 = 50;

    friend bool operator==(const SampleSize&, const SampleSize&) = default;
};

std::vector<SampleSize> parse_sizes(const std::string& text);  // "50,50" or "50,50;200,100"

// --- studies ---------------------------------------------------------------

enum class Criterion { PBC, Min, Max, Int };

std::string to_string(Criterion c);
Criterion criterion_from_string(const std::string& name);

struct StudyOptions {
    double train_fraction = 1.0 / 3.0;
    TransformSpec transform{};
    double level = 0.95;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct AucRow {
    std::string scenario;
    SampleSize size;
    std::size_t rep = 0;
    Criterion criterion = Criterion::PBC;
    double auc = 0.5;
    double ci_low = 0.5;
    double ci_high = 0.5;
};

struct ViolinTable {
    std::vector<AucRow> rows;
    std::size_t redraws = 0;

    std::vector<double> aucs(Criterion c, SampleSize size) const;
    double mean_auc(Criterion c, SampleSize size) const;
};

// Per replicate: generate a sample, evaluate PBC with a train/test split and
// the scalar baselines on the whole sample.
ViolinTable mc_auc_study(const ModelSpec& model, std::span<const SampleSize> sizes, std::size_t reps,
                         std::span<const Criterion> criteria, const StudyOptions& options);

struct CoverageOptions {
    StudyOptions study{};
    std::size_t real_system_n = 2000;   // per class, system and testing sample
    std::size_t sample_reference_n = 1000;  // per class, per replicate
};

struct CoverageReport {
    std::string scenario;
    SampleSize size;
    std::size_t reps = 0;
    double coverage_sample = 0.0;  // percent
    double coverage_real = 0.0;    // percent
    double mean_length = 0.0;
    double mean_auc = 0.0;
    double real_auc = 0.0;
    std::size_t redraws = 0;
};

// Real-system AUC for the model: a (n, n) system scored on an independent
// (n, n) testing sample.
double real_system_auc(const ModelSpec& model, std::size_t n, const StudyOptions& options);

std::vector<CoverageReport> coverage_study(const ModelSpec& model, std::span<const SampleSize> sizes,
                                           std::size_t reps, const CoverageOptions& options);

}  // namespace fnclass
