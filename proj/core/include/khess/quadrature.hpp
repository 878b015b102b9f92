#pragma once

#include <functional>
#include <vector>

#include "khess/grid.hpp"

namespace khess {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on P_order from the Chebyshev guess.
GaussRule gauss_legendre(int order);

/// Integral of f over [a, b] using `panels` equal Gauss-Legendre panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        const GaussRule& rule);

/// Integral of f over [0, edge] for integrands with a weak singularity at `edge`:
/// a uniform block of panels on [0, edge/2] followed by geometrically graded
/// panels (ratio 1/2) accumulating at the edge. `points` is the total node budget.
double integrate_to_edge(const std::function<double(double)>& f, double edge, int points,
                         int order = 10);

enum class RadialRule {
    trapezoid,    ///< composite trapezoid on the nodes
    cell_measure  ///< sum of u_i V_i with the finite-volume cell measures
};

/// n * omega_n * int_0^R |u| r^{n-1} dr.
double radial_mass(const RadialProfile& profile, int n, RadialRule rule = RadialRule::trapezoid);

}  // namespace khess
