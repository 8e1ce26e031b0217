#pragma once
// Training/testing protocol: a random fraction of the sample becomes the
// sample-system, the rest is scored against it and summarised by an ROC
// curve and an AUC with its asymptotic confidence interval.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fnclass/functional.hpp"
#include "fnclass/pbc.hpp"
#include "fnclass/random.hpp"
#include "fnclass/roc.hpp"
#include "fnclass/simlab.hpp"
#include "fnclass/transforms.hpp"

namespace fnclass {

struct SplitConfig {
    double train_fraction = 1.0 / 3.0;
    TransformSpec transform{};
    double level = 0.95;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ClassCounts {
    std::size_t n0 = 0;
    std::size_t n1 = 0;
};

struct Split {
    LabeledSample train;
    LabeledSample test;
    std::vector<std::size_t> train_index;
    std::vector<std::size_t> test_index;
};

struct SplitResult {
    RocCurve roc;
    AucEstimate auc;
    ClassCounts train;
    ClassCounts test;
    std::uint64_t seed = 0;
};

struct RepeatedSummary {
    std::vector<SplitResult> replicates;
    RocCurve mean_roc;
    double mean_auc = 0.0;
    double min_auc = 0.0;
    double max_auc = 0.0;
    double mean_ci_low = 0.0;
    double mean_ci_high = 0.0;
    std::size_t redraws = 0;

    std::vector<double> aucs() const;
};

// Simple random split without replacement: round(train_fraction * n)
// trajectories go to training. Throws ResampleNeededError when training has
// fewer than 2 of a class or testing has none of a class.
Split split_sample(const LabeledSample& sample, const SplitConfig& config, Rng& rng);

// Scores `test` against `system` and summarises it.
SplitResult evaluate_system(const SampleSystem& system, const LabeledSample& test, const SplitConfig& config,
                            unsigned threads = 1);

SplitResult evaluate_split(const LabeledSample& sample, const SplitConfig& config, Rng& rng, unsigned threads = 1);

// Split with redraws: attempt a uses make_rng(seed, {kStreamSplit, stream, a}).
// `redraws` is incremented per rejected attempt.
Split split_with_redraw(const LabeledSample& sample, const SplitConfig& config, std::uint64_t stream,
                        std::size_t& redraws, std::uint64_t* used_seed = nullptr);

RepeatedSummary repeated_evaluation(const LabeledSample& sample, const SplitConfig& config, std::size_t reps,
                                    unsigned threads = 1);

// Vertical average of curves sharing one p-grid.
RocCurve vertical_mean(std::span<const RocCurve> curves);

struct ConsistencyOptions {
    std::size_t reference_n = 2000;  // per class
    TransformSpec transform{};
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct ConsistencyRow {
    SampleSize size;
    double mean_sup = 0.0;
    double sd_sup = 0.0;
    std::size_t reps = 0;
};

// Mean sup-norm distance between the in-sample leave-one-out ROC at each
// size and a large-sample reference ROC built the same way.
std::vector<ConsistencyRow> consistency_check(const ModelSpec& model, std::span<const SampleSize> sizes,
                                              std::size_t reps, const ConsistencyOptions& options);

}  // namespace fnclass
