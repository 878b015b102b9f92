#pragma once

#include <functional>
#include <span>
#include <vector>

namespace khess {

/// Uniform mesh r_i = i * dr on [0, R], i = 0..m.
class RadialGrid {
public:
    RadialGrid(double radius, int cells);

    double radius() const { return radius_; }
    int cells() const { return cells_; }
    int node_count() const { return cells_ + 1; }
    double dr() const { return dr_; }
    double node(int i) const { return i == cells_ ? radius_ : i * dr_; }
    /// r_{i+1/2}, i = 0..m-1.
    double face(int i) const { return (i + 0.5) * dr_; }

    bool operator==(const RadialGrid&) const = default;

private:
    double radius_;
    int cells_;
    double dr_;
};

/// Finite samples u(r_i) on a RadialGrid.
class RadialProfile {
public:
    RadialProfile(RadialGrid grid, std::vector<double> values);

    static RadialProfile zeros(const RadialGrid& grid);
    static RadialProfile sample(const RadialGrid& grid, const std::function<double(double)>& fn);

    const RadialGrid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(values_.size()); }

    /// max_i |u_i|
    double sup_norm() const;
    RadialProfile scaled(double s) const;

private:
    RadialGrid grid_;
    std::vector<double> values_;
};

/// max_i |a_i - b_i|; the grids must agree.
double max_abs_difference(const RadialProfile& a, const RadialProfile& b);

}  // namespace khess
