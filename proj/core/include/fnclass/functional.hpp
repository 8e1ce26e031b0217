#pragma once
// Sampled functions on a shared time grid, trapezoid quadrature and
// squared-L2 distances.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fnclass {

// Strictly increasing, finite time points t_1 < ... < t_m (m >= 2).
// Trapezoid weights are precomputed so that integrals reduce to dot products.
class Grid {
public:
    explicit Grid(std::vector<double> points);

    static Grid equispaced(double a, double b, std::size_t m);

    std::span<const double> points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return points_.size(); }
    double front() const noexcept { return points_.front(); }
    double back() const noexcept { return points_.back(); }
    double length() const noexcept { return back() - front(); }

    friend bool operator==(const Grid& a, const Grid& b) { return a.points_ == b.points_; }

private:
    std::vector<double> points_;
    std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(Grid g) { return std::make_shared<const Grid>(std::move(g)); }

// The default simulation grid: 101 equispaced points on [-1, 1].
GridPtr default_grid();

bool same_grid(const GridPtr& a, const GridPtr& b);

class Trajectory {
public:
    Trajectory(GridPtr grid, std::vector<double> values);

    const GridPtr& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    GridPtr grid_;
    std::vector<double> values_;
};

enum class Label : std::uint8_t { Negative = 0, Positive = 1 };

inline int to_int(Label l) noexcept { return static_cast<int>(l); }
Label label_from_int(long v);
inline Label flip(Label l) noexcept {
    return l == Label::Positive ? Label::Negative : Label::Positive;
}

// Trajectories sharing one grid, stored row-major, with binary labels.
class LabeledSample {
public:
    explicit LabeledSample(GridPtr grid) : grid_(std::move(grid)) {}

    void add(std::span<const double> values, Label label);
    void add(const Trajectory& f, Label label);

    const GridPtr& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    std::size_t n0() const noexcept { return n0_; }
    std::size_t n1() const noexcept { return labels_.size() - n0_; }
    std::size_t count(Label l) const noexcept { return l == Label::Negative ? n0() : n1(); }

    std::span<const double> row(std::size_t i) const;
    Label label(std::size_t i) const { return labels_.at(i); }
    std::span<const Label> labels() const noexcept { return labels_; }
    std::span<const double> values() const noexcept { return values_; }
    Trajectory trajectory(std::size_t i) const;

    LabeledSample subset(std::span<const std::size_t> indices) const;
    LabeledSample with_swapped_labels() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    std::vector<Label> labels_;
    std::size_t n0_ = 0;
};

// n x n symmetric, zero diagonal, nonnegative.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {entries_.data() + i * n_, n_}; }
    void set(std::size_t i, std::size_t j, double d) noexcept {
        entries_[i * n_ + j] = d;
        entries_[j * n_ + i] = d;
    }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

// Composite trapezoid rule on the grid.
double integrate(std::span<const double> values, const Grid& grid);

// int_T (f(t) - g(t))^2 dt on the shared grid.
double l2_distance(const Trajectory& f, const Trajectory& g);
double l2_distance(std::span<const double> f, std::span<const double> g, const Grid& grid);

// Row-parallel when threads > 1; every entry is computed independently so the
// result does not depend on the thread count.
DistanceMatrix distance_matrix(const LabeledSample& sample, unsigned threads = 1);

// Distances from one trajectory (already on the sample grid) to every row.
std::vector<double> distances_to(std::span<const double> f, const LabeledSample& sample);

// Linear interpolation onto `target`; no extrapolation.
Trajectory resample(const Trajectory& f, const GridPtr& target);

}  // namespace fnclass
