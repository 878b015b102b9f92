#pragma once

#include <span>
#include <vector>

#include "khess/grid.hpp"
#include "khess/params.hpp"
#include "khess/stationary.hpp"

namespace khess {

/// Current u(t, .) of u_t = S_k(D^2 u) on B_R with u(t, R) = 0.
struct EvolutionState {
    RadialProfile profile;
    double t = 0.0;
    double dt = 0.0;
    long step_count = 0;
    double cfl_safety = 0.9;
};

/// Explicit-Euler bound cfl_safety / max_i rate_i with the rates of RadialSkOperator::evaluate.
/// A degenerate (flat) profile yields the cap `max_dt`.
double stable_dt(const EvolutionState& state, const ProblemParams& params, double max_dt = 1e6);

/// One explicit step with state.dt: u <- u + dt S_k(D^2 u) at nodes 0..m-1, u_m = 0.
///
/// Throws StabilityError if dt exceeds the linear stability limit or the
/// max-norm grows, and AdmissibilityError if S_k(D^2 u) < -tol somewhere
/// (u would decrease in time).
EvolutionState step(const EvolutionState& state, const ProblemParams& params);

/// Separable barriers around the initial data.
///
/// ratio_max / ratio_min are the extreme values of u0/theta over the nodes, the
/// r = R value taken as a ratio of one-sided slopes. The barrier factors are
/// normalised as T_lower0 = max(ratio_max, 1) >= 1 and T_upper0 = min(ratio_min, 1) <= 1,
/// so T_lower0 theta <= u0 <= T_upper0 theta.
struct EnvelopeConstants {
    double ratio_max = 1.0;
    double ratio_min = 1.0;
    double T_lower0 = 1.0;
    double T_upper0 = 1.0;
    /// Lower bracket constant (1 - s)/((k-1) s), s = T_lower0^{1-k}.
    double C1 = 0.0;
    /// Upper bracket constant T_upper0^{1-k} - 1.
    double C2 = 0.0;
    int k = 2;

    double T_lower(double t) const;
    double T_upper(double t) const;
};

EnvelopeConstants envelope_constants(const RadialProfile& u0, const StationarySolution& theta,
                                     const ProblemParams& params);

/// scale * theta * (1 + a cos(pi r / R)) with a = amplitude halved until the
/// result is k-admissible on the grid.
struct PerturbedData {
    RadialProfile profile;
    double amplitude = 0.0;
    int halvings = 0;
};

PerturbedData perturbed_initial_data(const StationarySolution& theta, const ProblemParams& params,
                                     double amplitude, double scale = 1.3);

struct DecaySample {
    double t = 0.0;
    /// sup_r |(1+t)^{1/(k-1)} u(t,r) - theta(r)|
    double sup_gap = 0.0;
    double mass = 0.0;
    double T_lower = 0.0;
    double T_upper = 0.0;
    /// max_r of the amount by which T_lower theta <= u <= T_upper theta fails (0 if it holds).
    double sandwich_violation = 0.0;
    /// Same for C1 (1+t)^{-1} theta <= (1+t)^{1/(k-1)} u - theta <= -C2 (1+t)^{-1} theta.
    double bracket_violation = 0.0;
};

struct DecayDiagnostics {
    std::vector<DecaySample> samples;
    EnvelopeConstants envelope;
    /// Least-squares slope of log sup_gap against log(1+t) over the fit window.
    double fitted_slope = 0.0;
    int fitted_points = 0;
    double fit_t_min = 10.0;
    double fit_t_max = 1e3;
    long steps = 0;
    double min_dt = 0.0;
    double max_dt = 0.0;
    RadialProfile final_profile;
};

struct EvolveOptions {
    double cfl_safety = 0.9;
    double max_dt = 1e6;
    double fit_t_min = 10.0;
    double fit_t_max = 1e3;
};

/// Geometric sampling schedule {0} + {2^{j/4} : 2^{j/4} <= t_end}, with t_end appended.
std::vector<double> geometric_sample_times(double t_end, int per_octave = 4);

/// Marches u0 to t_end with adaptive dt, landing exactly on every sample time.
/// u0 must vanish at r = R and be k-admissible; theta must live on the same grid.
DecayDiagnostics evolve_to(const RadialProfile& u0, double t_end, const ProblemParams& params,
                           const StationarySolution& theta, std::span<const double> sample_times,
                           const EvolveOptions& options = {});

/// (t, M(t)) with M = n omega_n int_0^R |u| r^{n-1} dr by the trapezoid rule.
struct MassPoint {
    double t = 0.0;
    double mass = 0.0;
};
std::vector<MassPoint> mass_series(std::span<const EvolutionState> history, const ProblemParams& params);

/// True when every successive mass is strictly smaller.
bool strictly_decreasing(std::span<const MassPoint> series);

}  // namespace khess
