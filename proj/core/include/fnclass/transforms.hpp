#pragma once
// Per-function distance transforms h_f applied before the Mann-Whitney
// comparison of positive against negative distances.
//
//   Identity           h(x) = x
//   SubgroupProximity  h(x) = min(x, q), q = tau-quantile of the scored
//                      function's distances to the positive trajectories.
//
// SubgroupProximity keeps the ordering of distances up to the scale of the
// nearest tau-fraction of positives and ties everything beyond it, so a
// trajectory close to one positive cluster is not penalised for being far
// from the others (mixture-shaped positive populations).

#include <span>
#include <string>
#include <string_view>

namespace fnclass {

enum class TransformKind { Identity, SubgroupProximity };

struct TransformSpec {
    TransformKind kind = TransformKind::Identity;
    double tau = 0.5;

    void validate() const;
    friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

std::string to_string(TransformKind kind);
TransformKind transform_kind_from_string(std::string_view name);

struct FittedTransform {
    TransformKind kind = TransformKind::Identity;
    double anchor = 0.0;  // unused by Identity

    double operator()(double x) const noexcept {
        return kind == TransformKind::Identity ? x : (x < anchor ? x : anchor);
    }
};

// Linear-interpolation sample quantile (R's type 7) of an unsorted sample.
double interpolated_quantile(std::span<const double> xs, double tau);

FittedTransform fit_transform(std::span<const double> dist_pos, const TransformSpec& spec);

double apply_transform(const FittedTransform& h, double x);

}  // namespace fnclass
