#pragma once
// Probability-based classification scores.
//
// A trajectory f is scored by the probability that its (transformed) distance
// to a random positive trajectory is below its distance to a random negative
// one, estimated by the Mann-Whitney fraction over all (positive, negative)
// pairs of a reference set, ties counting 1/2:
//
//   score(f) = 1/(P*N) sum_k sum_j [ h(d(f, f_k)) < h(d(f, f_j)) ]
//
// with k over positives and j over negatives. Within a sample the reference
// set is everything except f itself (leave-one-out); for a new trajectory it
// is the stored sample-system.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fnclass/functional.hpp"
#include "fnclass/roc.hpp"
#include "fnclass/transforms.hpp"

namespace fnclass {

struct SystemMeta {
    std::uint64_t seed = 0;
    std::string note;

    friend bool operator==(const SystemMeta&, const SystemMeta&) = default;
};

// The reference set new trajectories are scored against.
struct SampleSystem {
    LabeledSample sample;
    TransformSpec transform;
    SystemMeta meta;

    void validate() const;
};

SampleSystem make_system(LabeledSample sample, TransformSpec transform = {}, SystemMeta meta = {});

struct ScoreSet {
    std::vector<double> scores;
    std::vector<Label> labels;

    std::vector<double> scores_for(Label l) const;
    std::vector<double> neg_scores() const { return scores_for(Label::Negative); }
    std::vector<double> pos_scores() const { return scores_for(Label::Positive); }
};

// Mann-Whitney tally of h(dist_pos) < h(dist_neg), with h fitted on dist_pos.
PairTally pbc_tally(std::span<const double> dist_pos, std::span<const double> dist_neg, const TransformSpec& spec);

// Leave-one-out scores; requires n0 >= 2 and n1 >= 2.
ScoreSet loo_scores(const LabeledSample& sample, const TransformSpec& transform, unsigned threads = 1);
std::vector<PairTally> loo_tallies(const LabeledSample& sample, const TransformSpec& transform, unsigned threads = 1);

// f must already be on the system grid.
double score_new(const SampleSystem& system, const Trajectory& f);
double score_new(const SampleSystem& system, std::span<const double> values);
std::vector<double> score_batch(const SampleSystem& system, const LabeledSample& test, unsigned threads = 1);

// Operating threshold for false-positive level p: the (1 - p) empirical
// quantile of the negative score distribution.
double classification_threshold(std::span<const double> neg_scores, double p);
Label classify_score(double score, double p, std::span<const double> neg_scores);
Label classify(const SampleSystem& system, const Trajectory& f, double p, std::span<const double> neg_scores);

// `.pbcsys.json` persistence.
std::string system_to_json(const SampleSystem& system);
SampleSystem system_from_json(const std::string& text);
void save_system(const SampleSystem& system, const std::filesystem::path& path);
SampleSystem load_system(const std::filesystem::path& path);

// Appends one labelled trajectory (caller holds exclusive access).
void feed_system(SampleSystem& system, const Trajectory& f, Label label);

}  // namespace fnclass
