#include "fnclass/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fnclass/errors.hpp"

namespace fnclass {

void TransformSpec::validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("transform tau must lie in [0, 1]");
}

std::string to_string(TransformKind kind) {
    return kind == TransformKind::Identity ? "identity" : "subgroup_proximity";
}

TransformKind transform_kind_from_string(std::string_view name) {
    if (name == "identity" || name == "Identity") return TransformKind::Identity;
    if (name == "subgroup_proximity" || name == "SubgroupProximity" || name == "subgroup")
        return TransformKind::SubgroupProximity;
    throw UsageError("unknown transform kind '" + std::string(name) + "'");
}

double interpolated_quantile(std::span<const double> xs, double tau) {
    if (xs.empty()) throw InsufficientDataError("quantile of an empty sample");
    if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    std::vector<double> s(xs.begin(), xs.end());
    const double h = tau * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(lo), s.end());
    const double x_lo = s[lo];
    if (hi == lo) return x_lo;
    const double x_hi = *std::min_element(s.begin() + static_cast<std::ptrdiff_t>(lo) + 1, s.end());
    return x_lo + (h - static_cast<double>(lo)) * (x_hi - x_lo);
}

FittedTransform fit_transform(std::span<const double> dist_pos, const TransformSpec& spec) {
    spec.validate();
    if (spec.kind == TransformKind::Identity) return {};
    if (dist_pos.empty()) throw InsufficientDataError("subgroup proximity needs at least one positive distance");
    return {TransformKind::SubgroupProximity, interpolated_quantile(dist_pos, spec.tau)};
}

double apply_transform(const FittedTransform& h, double x) { return h(x); }

}  // namespace fnclass
