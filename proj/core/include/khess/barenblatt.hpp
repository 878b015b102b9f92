#pragma once

#include <functional>
#include <span>
#include <vector>

#include "khess/grid.hpp"
#include "khess/params.hpp"

namespace khess {

/// U_C(t, x) = t^{-alpha} (C - gamma |x|^2 / t^{2 beta})_+^{k/(k-1)},
/// a positive solution of u_t = (-1)^{k-1} S_k(D^2 u) on R^n for k >= 2.
///
/// The profile theta(xi) = (C - gamma xi^2)_+^{k/(k-1)} vanishes at
/// |xi| = sqrt(C/gamma). r0 = sqrt(2C/gamma) is the support parameter that
/// indexes the family by mass.
class BarenblattSolution {
public:
    /// Requires k >= 2 and C > 0.
    BarenblattSolution(const ProblemParams& params, double C);
    /// Member of the family carrying total mass M > 0.
    static BarenblattSolution from_mass(const ProblemParams& params, double mass);

    const ProblemParams& params() const { return params_; }
    double C() const { return C_; }
    double r0() const { return r0_; }
    /// Closed-form total mass.
    double mass() const { return mass_; }
    double exponent() const { return exponent_; }

    double profile(double xi) const;
    double profile_slope(double xi) const;
    /// |xi| where the profile vanishes, sqrt(C/gamma).
    double profile_edge() const { return edge_; }

    double value(double t, double r) const;
    double center_value(double t) const;

    /// t^beta sqrt(C/gamma).
    double support_radius(double t) const;
    /// t^beta [(2k/(k-1)) (c_nk/beta)^{1/k} C]^{1/2}, the same radius written through c_nk and beta.
    double support_radius_bracket_form(double t) const;

private:
    ProblemParams params_;
    double C_;
    double gamma_;
    double exponent_;  // k/(k-1)
    double edge_;
    double r0_;
    double mass_;
};

/// k = 1 branch: theta(xi) = C exp(-xi^2/4) and u(t,x) = t^{-n/2} theta(x / t^{1/2}).
double gaussian_profile(double xi, double C);
double gaussian_profile_slope(double xi, double C);
double gaussian_value(double t, double r, int n, double C);

/// max over samples of |beta theta - (-1)^k c_nk r^{-k} (theta')^k| with analytic theta'.
/// Samples must lie in (0, profile_edge).
double profile_ode_residual(const BarenblattSolution& sol, std::span<const double> sample_r);

/// max over samples of |beta theta + c_nk r^{-1} theta'| for the k = 1 Gaussian (n arbitrary).
double gaussian_profile_ode_residual(double C, std::span<const double> sample_r);

/// max over samples of |alpha theta + beta r theta' - (-1)^k c_nk r^{1-n} (r^{n-k} (theta')^k)'|
/// with the outer derivative by a fourth-order central difference of step h.
double radial_profile_fd_residual(const BarenblattSolution& sol, std::span<const double> sample_r,
                                  double h = 1e-3);

/// max over (t, r) of |U_t - (-1)^{k-1} S_k(D^2 U)|, U_t and U', U'' by fourth-order
/// central differences. r must lie strictly inside the support at every t.
double pde_fd_residual(const BarenblattSolution& sol, std::span<const double> times,
                       std::span<const double> radii, double h = 1e-3);

/// n omega_n int_0^inf U_C(t, r) r^{n-1} dr with graded Gauss-Legendre panels.
/// Requires quad_points >= 1000.
double mass_of(const BarenblattSolution& sol, int quad_points, double t = 1.0);

/// Closed-form inverse of the mass map for the family above:
/// r0(M) = {2^{n/2} pi^{-n/2} (4k/(k-1))^{k/(k-1)} [c_nk (n(k-1)+2k)]^{1/(k-1)}
///          Gamma(n/2 + (2k-1)/(k-1)) / Gamma((2k-1)/(k-1)) M}^{(k-1)/(n(k-1)+2k)}.
double r0_of_mass(double mass, const ProblemParams& params);

/// The same expression without the 2^{n/2} factor. It inverts the mass map of
/// t^{-alpha} [(gamma/2)(r0^2 - |xi|^2)]_+^{k/(k-1)}, which is not a solution of
/// the equation; kept so the discrepancy can be measured.
double r0_of_mass_uncorrected(double mass, const ProblemParams& params);

/// Mass of t^{-alpha} [(gamma/2)(r0^2 - |xi|^2)]_+^{k/(k-1)} by quadrature.
double half_gamma_profile_mass(double r0, const ProblemParams& params, int quad_points);

/// int U_C(t, x) phi(|x|) dx for a radial test function phi, by quadrature in xi.
double weak_pairing(const BarenblattSolution& sol, double t, const std::function<double(double)>& phi,
                    int quad_points = 4000);

/// Whole-space radial march of u_t = (-1)^{k-1} S_k(D^2 u) on [0, R_max].
struct FreeEvolutionSample {
    double t = 0.0;
    /// sup over nodes of |t^alpha u(t, r) - theta_M(r / t^beta)| (theta_M: profile of the mass-M family member).
    double rescaled_gap = 0.0;
    double mass = 0.0;
    /// Largest node radius with u > 0.
    double support_radius = 0.0;
    /// Support radius of the mass-M Barenblatt solution at the same t.
    double barenblatt_support = 0.0;
};

struct FreeEvolutionReport {
    std::vector<FreeEvolutionSample> samples;
    double initial_mass = 0.0;
    /// max |M(t) - M(t0)| / M(t0) with the finite-volume cell measure (what the scheme conserves).
    double mass_drift = 0.0;
    /// Same with the trapezoid rule.
    double mass_drift_trapezoid = 0.0;
    bool gap_decreased = false;
    long steps = 0;
};

struct FreeEvolveOptions {
    double cfl_safety = 0.9;
    int samples_per_decade = 4;
};

/// `initial` is u(t0, .) >= 0 with compact support on [0, R_max]; the comparison
/// profile is the mass-M member of the family. Throws DomainTooSmallError when
/// R_max < 1.5 support_radius(t_end) of that member, or when the numerical
/// support reaches the last cell.
FreeEvolutionReport evolve_free(const RadialProfile& initial, double t0, double t_end,
                                const ProblemParams& params, const FreeEvolveOptions& options = {});

}  // namespace khess
