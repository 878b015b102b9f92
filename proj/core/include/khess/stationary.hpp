#pragma once

#include <vector>

#include "khess/grid.hpp"
#include "khess/params.hpp"

namespace khess {

/// Output of one outward integration of the radial stationary equation
/// v' = -r^{n-1} theta / ((k-1) c_nk),  theta' = (v / r^{n-k})^{1/k}
/// from theta(0) = center_value < 0.
///
/// `raw_profile` lives on the uniform grid [0, crossing_radius] with `ode_steps`
/// cells and `raw_slope` holds theta' at the same nodes; together they give a
/// cubic Hermite interpolant of the ODE solution.
struct ShootingResult {
    double center_value = -1.0;
    double crossing_radius = 0.0;
    RadialProfile raw_profile;
    std::vector<double> raw_slope;

    /// Hermite interpolation of theta at 0 <= r <= crossing_radius.
    double theta_at(double r) const;
    double slope_at(double r) const;
};

/// Fixed-step RK4 from a series start on [0, 3h]. The zero crossing is located
/// by bisection on the last step to 1e-12 in r, and the profile is then
/// re-integrated with h = R1 / ode_steps so the samples are uniform.
/// Requires k >= 2 and ode_steps >= 1000.
ShootingResult shoot_profile(const ProblemParams& params, int ode_steps, double center_value = -1.0);

/// The eigen-factor lambda of S_k(D^2 theta) = lambda theta together with the
/// constant c = [-lambda (k-1)]^{1/(k-1)} that maps it onto the normalised problem.
struct ScalingLaw {
    double lambda = 0.0;
    double c = 0.0;
};

/// Requires lambda < 0 and k >= 2.
ScalingLaw scaling_for_lambda(double lambda, int k);

/// theta on the ball B_R: S_k(D^2 theta) = -theta/(k-1), theta < 0 inside, theta(R) = 0.
struct StationarySolution {
    RadialProfile profile;
    double radius = 0.0;
    double center_value = 0.0;
    double boundary_slope = 0.0;
    double residual = 0.0;
    double sup_norm = 0.0;
    /// Crossing radius of the unit shooting run that was rescaled onto B_R.
    double unit_crossing_radius = 0.0;
};

/// Rescales a shooting run onto B_R via theta_R(r) = mu^{2k/(k-1)} theta_raw(r/mu), mu = R/R1.
StationarySolution profile_on_ball(double radius, const ProblemParams& params, const RadialGrid& grid,
                                   const ShootingResult& shot);

/// Convenience overload: shoots with theta(0) = -1 first.
StationarySolution profile_on_ball(double radius, const ProblemParams& params, const RadialGrid& grid,
                                   int ode_steps = 20000);

/// Independent route: bisects on theta(0) until the crossing radius equals R,
/// without using the homogeneity rescaling. Used as a cross-check.
StationarySolution profile_on_ball_direct(double radius, const ProblemParams& params,
                                          const RadialGrid& grid, int ode_steps = 20000);

/// e(r) = c (r^2 - R^2), c = (1/2)(n c_nk)^{-1/k}: the torsion function S_k(D^2 e) = 1.
double torsion_constant(const ProblemParams& params);
RadialProfile torsion_solution(double radius, const ProblemParams& params, const RadialGrid& grid);

struct BoundReport {
    double bound_value = 0.0;
    double sup_norm = 0.0;
    bool satisfied = false;
};

/// sup|theta| <= [2^k R^{2k} / ((k-1) c_nk)]^{1/(k-1)}, from the gradient-at-the-boundary argument.
BoundReport check_ball_bound(const StationarySolution& sol, const ProblemParams& params);

/// sup|theta| <= [||e||^k / (k-1)]^{1/(k-1)}, from comparison with the torsion function.
BoundReport check_torsion_bound(const StationarySolution& sol, const ProblemParams& params);

/// t -> T(t) theta with T(t) = [T0^{1-k} + t]^{-1/(k-1)}.
class SeparableFamily {
public:
    SeparableFamily(StationarySolution theta, double t0_factor, const ProblemParams& params);

    double time_factor(double t) const;
    RadialProfile at(double t) const;
    /// T(t) / (1+t)^{-1/(k-1)} = {(1+t)/(T0^{1-k}+t)}^{1/(k-1)}.
    double ratio_to_unit(double t) const;

    const StationarySolution& theta() const { return theta_; }
    double t0_factor() const { return t0_; }

private:
    StationarySolution theta_;
    double t0_;
    int k_;
};

}  // namespace khess
