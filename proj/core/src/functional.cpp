#include "fnclass/functional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fnclass/errors.hpp"
#include "fnclass/parallel.hpp"

namespace fnclass {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw DimensionError("grid needs at least 2 points");
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (!std::isfinite(points_[k])) throw DataError("grid point " + std::to_string(k) + " is not finite");
        if (k > 0 && !(points_[k] > points_[k - 1]))
            throw DataError("grid points must be strictly increasing (index " + std::to_string(k) + ")");
    }
    weights_.assign(points_.size(), 0.0);
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
        const double half = 0.5 * (points_[k + 1] - points_[k]);
        weights_[k] += half;
        weights_[k + 1] += half;
    }
}

Grid Grid::equispaced(double a, double b, std::size_t m) {
    if (m < 2) throw DimensionError("grid needs at least 2 points");
    std::vector<double> pts(m);
    const double span = b - a;
    for (std::size_t k = 0; k < m; ++k)
        pts[k] = a + span * static_cast<double>(k) / static_cast<double>(m - 1);
    pts.back() = b;
    return Grid(std::move(pts));
}

GridPtr default_grid() {
    static const GridPtr grid = make_grid(Grid::equispaced(-1.0, 1.0, 101));
    return grid;
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Trajectory::Trajectory(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw DimensionError("trajectory without grid");
    if (values_.size() != grid_->size())
        throw DimensionError("trajectory has " + std::to_string(values_.size()) + " values for a grid of " +
                             std::to_string(grid_->size()) + " points");
    for (double v : values_)
        if (!std::isfinite(v)) throw DataError("trajectory values must be finite");
}

Label label_from_int(long v) {
    if (v == 0) return Label::Negative;
    if (v == 1) return Label::Positive;
    throw DataError("label must be 0 or 1, got " + std::to_string(v));
}

void LabeledSample::add(std::span<const double> values, Label label) {
    if (values.size() != grid_->size())
        throw DimensionError("trajectory length " + std::to_string(values.size()) + " does not match grid size " +
                             std::to_string(grid_->size()));
    for (double v : values)
        if (!std::isfinite(v)) throw DataError("trajectory values must be finite");
    values_.insert(values_.end(), values.begin(), values.end());
    labels_.push_back(label);
    if (label == Label::Negative) ++n0_;
}

void LabeledSample::add(const Trajectory& f, Label label) {
    if (!same_grid(f.grid(), grid_)) throw DimensionError("trajectory grid differs from sample grid");
    add(f.values(), label);
}

std::span<const double> LabeledSample::row(std::size_t i) const {
    const std::size_t m = grid_->size();
    return {values_.data() + i * m, m};
}

Trajectory LabeledSample::trajectory(std::size_t i) const {
    auto r = row(i);
    return Trajectory(grid_, std::vector<double>(r.begin(), r.end()));
}

LabeledSample LabeledSample::subset(std::span<const std::size_t> indices) const {
    LabeledSample out(grid_);
    out.values_.reserve(indices.size() * grid_->size());
    for (std::size_t i : indices) out.add(row(i), labels_.at(i));
    return out;
}

LabeledSample LabeledSample::with_swapped_labels() const {
    LabeledSample out = *this;
    for (auto& l : out.labels_) l = flip(l);
    out.n0_ = size() - n0_;
    return out;
}

double integrate(std::span<const double> values, const Grid& grid) {
    if (values.size() != grid.size())
        throw DimensionError("integrand has " + std::to_string(values.size()) + " values for a grid of " +
                             std::to_string(grid.size()) + " points");
    const auto w = grid.weights();
    double s = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) s += w[k] * values[k];
    return s;
}

namespace {

inline double weighted_sq_diff(const double* f, const double* g, const double* w, std::size_t m) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double d = f[k] - g[k];
        s += w[k] * d * d;
    }
    return s;
}

}  // namespace

double l2_distance(std::span<const double> f, std::span<const double> g, const Grid& grid) {
    if (f.size() != grid.size() || g.size() != grid.size())
        throw DimensionError("trajectory lengths do not match the grid");
    return weighted_sq_diff(f.data(), g.data(), grid.weights().data(), grid.size());
}

double l2_distance(const Trajectory& f, const Trajectory& g) {
    if (!same_grid(f.grid(), g.grid())) throw DimensionError("trajectories live on different grids");
    return l2_distance(f.values(), g.values(), *f.grid());
}

DistanceMatrix distance_matrix(const LabeledSample& sample, unsigned threads) {
    const std::size_t n = sample.size();
    if (n == 0) throw InsufficientDataError("distance matrix of an empty sample");
    DistanceMatrix D(n);
    const Grid& grid = *sample.grid();
    const double* w = grid.weights().data();
    const std::size_t m = grid.size();
    const double* base = sample.values().data();
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
            D.set(i, j, weighted_sq_diff(base + i * m, base + j * m, w, m));
    });
    return D;
}

std::vector<double> distances_to(std::span<const double> f, const LabeledSample& sample) {
    const Grid& grid = *sample.grid();
    if (f.size() != grid.size()) throw DimensionError("trajectory length does not match the system grid");
    const std::size_t m = grid.size();
    const double* w = grid.weights().data();
    const double* base = sample.values().data();
    std::vector<double> d(sample.size());
    for (std::size_t j = 0; j < sample.size(); ++j) d[j] = weighted_sq_diff(f.data(), base + j * m, w, m);
    return d;
}

Trajectory resample(const Trajectory& f, const GridPtr& target) {
    if (same_grid(f.grid(), target)) return Trajectory(target, std::vector<double>(f.values().begin(), f.values().end()));
    const auto src = f.grid()->points();
    const auto vals = f.values();
    const auto dst = target->points();
    if (dst.front() < src.front() || dst.back() > src.back())
        throw RangeError("resampling target [" + std::to_string(dst.front()) + ", " + std::to_string(dst.back()) +
                         "] extends beyond the observed range [" + std::to_string(src.front()) + ", " +
                         std::to_string(src.back()) + "]");
    std::vector<double> out(dst.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const double t = dst[i];
        while (k + 2 < src.size() && src[k + 1] < t) ++k;
        const double t0 = src[k], t1 = src[k + 1];
        if (t == t1) {
            out[i] = vals[k + 1];
        } else if (t == t0) {
            out[i] = vals[k];
        } else {
            const double u = (t - t0) / (t1 - t0);
            out[i] = vals[k] + u * (vals[k + 1] - vals[k]);
        }
    }
    return Trajectory(target, std::move(out));
}

}  // namespace fnclass
