#pragma once
// Scalar reductions of a trajectory (minimum, maximum, integral) used as
// comparison criteria, and their AUCs.

#include <span>
#include <string>
#include <vector>

#include "fnclass/functional.hpp"
#include "fnclass/random.hpp"
#include "fnclass/roc.hpp"

namespace fnclass {

struct SplitConfig;

enum class ReducerKind { Min, Max, Int };

std::string to_string(ReducerKind k);
ReducerKind reducer_from_string(const std::string& name);

double reduce(std::span<const double> values, const Grid& grid, ReducerKind kind);
double reduce(const Trajectory& f, ReducerKind kind);
std::vector<double> reduce_all(const LabeledSample& sample, ReducerKind kind);

// Direction in which the reduced value discriminates.
enum class Orientation { HigherIsPositive, LowerIsPositive, Neutral };

std::string to_string(Orientation o);

struct BaselineResult {
    AucEstimate estimate;  // oriented: auc = max(A, 1 - A), interval mirrored when flipped
    double raw_auc = 0.5;  // P(value_pos > value_neg) + 1/2 ties
    Orientation orientation = Orientation::Neutral;
};

// Whole-sample AUC of the reduced values.
BaselineResult baseline_auc(const LabeledSample& sample, ReducerKind kind, double level = 0.95);

// Same, restricted to the testing cohort of a random split.
BaselineResult baseline_auc_split(const LabeledSample& sample, ReducerKind kind, const SplitConfig& config,
                                  Rng& rng);

}  // namespace fnclass
