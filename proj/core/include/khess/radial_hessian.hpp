#pragma once

#include <span>
#include <vector>

#include "khess/grid.hpp"
#include "khess/params.hpp"

namespace khess {

/// Face fluxes F_{i+1/2} = r_{i+1/2}^{n-k} ((u_{i+1} - u_i)/dr)^k, i = 0..m-1.
struct FluxField {
    RadialGrid grid;
    std::vector<double> flux;
};

FluxField compute_fluxes(const RadialProfile& profile, const ProblemParams& params);

/// Conservative finite-volume discretisation of c_nk r^{1-n} (r^{n-k} (u')^k)'.
///
/// Cell i = 1..m-1 spans [r_{i-1/2}, r_{i+1/2}] with measure
/// V_i = (r_{i+1/2}^n - r_{i-1/2}^n)/n; the origin cell is [0, r_{1/2}].
/// S_i = c_nk (F_{i+1/2} - F_{i-1/2}) / V_i, which reproduces quadratics exactly
/// and collapses at the origin to binom(n,k) (2(u_1 - u_0)/dr^2)^k.
///
/// The operator is built once per (grid, params) and reused by the time stepper.
class RadialSkOperator {
public:
    RadialSkOperator(const RadialGrid& grid, const ProblemParams& params);

    const RadialGrid& grid() const { return grid_; }
    const ProblemParams& params() const { return params_; }

    /// Writes S_k at nodes 0..m-1 into out[0..m-1]; out[m] is left untouched.
    /// Returns the largest explicit-Euler rate c_nk (D_{i-1/2} + D_{i+1/2}) / (V_i dr)
    /// with D = dF/du' = k r^{n-k} |u'|^{k-1}.
    double evaluate(std::span<const double> u, std::span<double> out) const;

    /// Cell measures V_i, i = 0..m-1 (the sphere factor n*omega_n is not included).
    std::span<const double> cell_measures() const { return cell_measure_; }

private:
    RadialGrid grid_;
    ProblemParams params_;
    std::vector<double> face_weight_;   // r_{i+1/2}^{n-k}
    std::vector<double> cell_measure_;  // V_i
    std::vector<double> inv_cell_;      // c_nk / V_i
};

/// Nodal S_k(D^2 u). Node m holds a linear extrapolation from nodes m-2, m-1;
/// it is a boundary value and excluded from every norm in this library.
/// Requires m >= 4.
RadialProfile apply_sk_radial(const RadialProfile& profile, const ProblemParams& params);

/// max over nodes 0..m-1 of |S_k(D^2 theta) + theta/(k-1)|. Requires k >= 2.
double stationary_residual(const RadialProfile& profile, const ProblemParams& params);

}  // namespace khess
