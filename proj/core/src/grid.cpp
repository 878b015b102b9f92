#include "khess/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "khess/errors.hpp"

namespace khess {

RadialGrid::RadialGrid(double radius, int cells) : radius_(radius), cells_(cells), dr_(0.0) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("RadialGrid: radius must be > 0");
    if (cells < 1) throw ParameterError("RadialGrid: need at least one cell, got " + std::to_string(cells));
    dr_ = radius / cells;
}

RadialProfile::RadialProfile(RadialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.node_count()) {
        throw ParameterError("RadialProfile: " + std::to_string(values_.size()) + " values for " +
                             std::to_string(grid_.node_count()) + " nodes");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ConsistencyError("RadialProfile: non-finite value at node " + std::to_string(i));
        }
    }
}

RadialProfile RadialProfile::zeros(const RadialGrid& grid) {
    return RadialProfile(grid, std::vector<double>(static_cast<std::size_t>(grid.node_count()), 0.0));
}

RadialProfile RadialProfile::sample(const RadialGrid& grid, const std::function<double(double)>& fn) {
    std::vector<double> v(static_cast<std::size_t>(grid.node_count()));
    for (int i = 0; i < grid.node_count(); ++i) v[static_cast<std::size_t>(i)] = fn(grid.node(i));
    return RadialProfile(grid, std::move(v));
}

double RadialProfile::sup_norm() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

RadialProfile RadialProfile::scaled(double s) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= s;
    return RadialProfile(grid_, std::move(v));
}

double max_abs_difference(const RadialProfile& a, const RadialProfile& b) {
    if (!(a.grid() == b.grid())) throw ParameterError("max_abs_difference: grids differ");
    double d = 0.0;
    for (int i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace khess
