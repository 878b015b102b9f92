#include "khess/barenblatt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "khess/errors.hpp"
#include "khess/quadrature.hpp"
#include "khess/radial_hessian.hpp"
#include "khess/symmetric.hpp"

namespace khess {

namespace {

double mass_prefactor(int n, double exponent) {
    // n omega_n int_0^1 (1 - s^2)^p s^{n-1} ds = pi^{n/2} Gamma(p+1) / Gamma(n/2 + p + 1)
    return std::pow(std::numbers::pi, 0.5 * n) *
           std::exp(std::lgamma(exponent + 1.0) - std::lgamma(0.5 * n + exponent + 1.0));
}

// The bracket of the closed form r0(M) without the 2^{n/2} factor.
double r0_bracket(double mass, const ProblemParams& params) {
    const int n = params.n;
    const int k = params.k;
    if (k < 2) throw ParameterError("r0_of_mass: k must be >= 2");
    if (!(mass > 0.0)) throw ParameterError("r0_of_mass: mass must be > 0");
    const double q = (2.0 * k - 1.0) / (k - 1.0);
    const double gamma_ratio = std::exp(std::lgamma(0.5 * n + q) - std::lgamma(q));
    return std::pow(std::numbers::pi, -0.5 * n) * std::pow(4.0 * k / (k - 1.0), k / (k - 1.0)) *
           std::pow(params.c_nk * (n * (k - 1.0) + 2.0 * k), 1.0 / (k - 1.0)) * gamma_ratio * mass;
}

double similarity_root(double bracket, const ProblemParams& params) {
    const int n = params.n;
    const int k = params.k;
    return std::pow(bracket, (k - 1.0) / (n * (k - 1.0) + 2.0 * k));
}

void require_positive_time(double t) {
    if (!(t > 0.0)) throw ParameterError("Barenblatt evaluation needs t > 0, got " + std::to_string(t));
}

double d1_fourth(const auto& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

double d2_fourth(const auto& f, double x, double h) {
    return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h);
}

}  // namespace

BarenblattSolution::BarenblattSolution(const ProblemParams& params, double C) : params_(params), C_(C) {
    if (params.k < 2) throw ParameterError("k-Barenblatt solutions need k >= 2 (k = 1 is the Gaussian)");
    if (!(C > 0.0) || !std::isfinite(C)) throw ParameterError("Barenblatt constant C must be > 0");
    gamma_ = params.gamma_value();
    exponent_ = params.k / (params.k - 1.0);
    edge_ = std::sqrt(C / gamma_);
    r0_ = std::sqrt(2.0 * C / gamma_);
    mass_ = mass_prefactor(params.n, exponent_) * std::pow(edge_, params.n) * std::pow(C, exponent_);
}

BarenblattSolution BarenblattSolution::from_mass(const ProblemParams& params, double mass) {
    const double r0 = r0_of_mass(mass, params);
    return BarenblattSolution(params, 0.5 * params.gamma_value() * r0 * r0);
}

double BarenblattSolution::profile(double xi) const {
    const double base = C_ - gamma_ * xi * xi;
    return base > 0.0 ? std::pow(base, exponent_) : 0.0;
}

double BarenblattSolution::profile_slope(double xi) const {
    const double base = C_ - gamma_ * xi * xi;
    if (base <= 0.0) return 0.0;
    return -2.0 * gamma_ * exponent_ * xi * std::pow(base, 1.0 / (params_.k - 1));
}

double BarenblattSolution::value(double t, double r) const {
    require_positive_time(t);
    return std::pow(t, -params_.alpha) * profile(r / std::pow(t, params_.beta));
}

double BarenblattSolution::center_value(double t) const {
    require_positive_time(t);
    return std::pow(t, -params_.alpha) * std::pow(C_, exponent_);
}

double BarenblattSolution::support_radius(double t) const {
    require_positive_time(t);
    return std::pow(t, params_.beta) * edge_;
}

double BarenblattSolution::support_radius_bracket_form(double t) const {
    require_positive_time(t);
    const int k = params_.k;
    return std::pow(t, params_.beta) *
           std::sqrt(2.0 * k / (k - 1.0) * std::pow(params_.c_nk / params_.beta, 1.0 / k) * C_);
}

double gaussian_profile(double xi, double C) { return C * std::exp(-0.25 * xi * xi); }

double gaussian_profile_slope(double xi, double C) { return -0.5 * xi * gaussian_profile(xi, C); }

double gaussian_value(double t, double r, int n, double C) {
    require_positive_time(t);
    return std::pow(t, -0.5 * n) * gaussian_profile(r / std::sqrt(t), C);
}

double profile_ode_residual(const BarenblattSolution& sol, std::span<const double> sample_r) {
    const ProblemParams& p = sol.params();
    const double sign = p.k % 2 == 0 ? 1.0 : -1.0;
    double res = 0.0;
    for (double r : sample_r) {
        if (!(r > 0.0) || !(r < sol.profile_edge())) {
            throw ParameterError("profile_ode_residual: sample r = " + std::to_string(r) + " outside (0, edge)");
        }
        const double rhs = sign * p.c_nk * ipow(sol.profile_slope(r) / r, p.k);
        res = std::max(res, std::abs(p.beta * sol.profile(r) - rhs));
    }
    return res;
}

double gaussian_profile_ode_residual(double C, std::span<const double> sample_r) {
    double res = 0.0;
    for (double r : sample_r) {
        if (!(r > 0.0)) throw ParameterError("gaussian_profile_ode_residual: samples must be > 0");
        res = std::max(res, std::abs(0.5 * gaussian_profile(r, C) + gaussian_profile_slope(r, C) / r));
    }
    return res;
}

double radial_profile_fd_residual(const BarenblattSolution& sol, std::span<const double> sample_r, double h) {
    const ProblemParams& p = sol.params();
    const double sign = p.k % 2 == 0 ? 1.0 : -1.0;
    auto flux = [&](double r) { return ipow(r, p.n - p.k) * ipow(sol.profile_slope(r), p.k); };
    double res = 0.0;
    for (double r : sample_r) {
        if (!(r - 2.0 * h > 0.0) || !(r + 2.0 * h < sol.profile_edge())) {
            throw ParameterError("radial_profile_fd_residual: stencil leaves the open support at r = " +
                                 std::to_string(r));
        }
        const double lhs = p.alpha * sol.profile(r) + p.beta * r * sol.profile_slope(r);
        const double rhs = sign * p.c_nk * std::pow(r, 1 - p.n) * d1_fourth(flux, r, h);
        res = std::max(res, std::abs(lhs - rhs));
    }
    return res;
}

double pde_fd_residual(const BarenblattSolution& sol, std::span<const double> times, std::span<const double> radii,
                       double h) {
    const ProblemParams& p = sol.params();
    const double sign = p.k % 2 == 1 ? 1.0 : -1.0;  // (-1)^{k-1}
    double res = 0.0;
    for (double t : times) {
        require_positive_time(t);
        for (double r : radii) {
            if (!(r - 2.0 * h > 0.0) || !(r + 2.0 * h < sol.support_radius(t))) {
                throw ParameterError("pde_fd_residual: stencil leaves the open support at r = " + std::to_string(r));
            }
            const double ht = h * t;
            const double ut = d1_fourth([&](double s) { return sol.value(s, r); }, t, ht);
            auto in_r = [&](double x) { return sol.value(t, x); };
            const double ur = d1_fourth(in_r, r, h);
            const double urr = d2_fourth(in_r, r, h);
            res = std::max(res, std::abs(ut - sign * radial_sk_pointwise(ur, urr, r, p.n, p.k)));
        }
    }
    return res;
}

double mass_of(const BarenblattSolution& sol, int quad_points, double t) {
    if (quad_points < 1000) throw ParameterError("mass_of: quad_points must be >= 1000");
    const int n = sol.params().n;
    const double sphere = n * unit_ball_volume(n);
    return sphere * integrate_to_edge([&](double r) { return sol.value(t, r) * ipow(r, n - 1); },
                                      sol.support_radius(t), quad_points);
}

double r0_of_mass(double mass, const ProblemParams& params) {
    return similarity_root(std::pow(2.0, 0.5 * params.n) * r0_bracket(mass, params), params);
}

double r0_of_mass_uncorrected(double mass, const ProblemParams& params) {
    return similarity_root(r0_bracket(mass, params), params);
}

double half_gamma_profile_mass(double r0, const ProblemParams& params, int quad_points) {
    const int n = params.n;
    const double half_gamma = 0.5 * params.gamma_value();
    const double p = params.k / (params.k - 1.0);
    const double sphere = n * unit_ball_volume(n);
    return sphere * integrate_to_edge(
                        [&](double r) {
                            const double base = half_gamma * (r0 * r0 - r * r);
                            return base > 0.0 ? std::pow(base, p) * ipow(r, n - 1) : 0.0;
                        },
                        r0, quad_points);
}

double weak_pairing(const BarenblattSolution& sol, double t, const std::function<double(double)>& phi,
                    int quad_points) {
    require_positive_time(t);
    const int n = sol.params().n;
    const double scale = std::pow(t, sol.params().beta);
    const double sphere = n * unit_ball_volume(n);
    // U(t,x) dx = theta(xi) dxi because alpha = n beta.
    return sphere * integrate_to_edge([&](double xi) { return sol.profile(xi) * phi(scale * xi) * ipow(xi, n - 1); },
                                      sol.profile_edge(), quad_points);
}

FreeEvolutionReport evolve_free(const RadialProfile& initial, double t0, double t_end, const ProblemParams& params,
                                const FreeEvolveOptions& options) {
    if (params.k < 2) throw ParameterError("evolve_free: k must be >= 2");
    if (!(t0 > 0.0) || !(t_end > t0)) throw ParameterError("evolve_free: need 0 < t0 < t_end");
    if (!(options.cfl_safety > 0.0 && options.cfl_safety < 1.0)) {
        throw ParameterError("evolve_free: cfl_safety must lie in (0, 1)");
    }
    const RadialGrid& g = initial.grid();
    const int m = g.cells();
    for (int i = 0; i <= m; ++i) {
        if (initial[i] < 0.0) throw ParameterError("evolve_free: initial data must be non-negative");
        // The flux derivative k c r^{n-k} (-u')^{k-1} is only sign-definite for u' <= 0.
        if (i > 0 && initial[i] > initial[i - 1]) {
            throw ParameterError("evolve_free: initial data must be nonincreasing in r (node " + std::to_string(i) + ")");
        }
    }
    if (initial[m] != 0.0 || initial[m - 1] != 0.0) {
        throw DomainTooSmallError("evolve_free: initial support already touches R_max");
    }

    FreeEvolutionReport report;
    report.initial_mass = radial_mass(initial, params.n);
    if (!(report.initial_mass > 0.0)) throw ParameterError("evolve_free: initial data has zero mass");
    const BarenblattSolution target = BarenblattSolution::from_mass(params, report.initial_mass);
    if (g.radius() < 1.5 * target.support_radius(t_end)) {
        throw DomainTooSmallError("evolve_free: R_max = " + std::to_string(g.radius()) +
                                  " is below 1.5x the final Barenblatt support " +
                                  std::to_string(target.support_radius(t_end)));
    }
    const double cell_mass0 = radial_mass(initial, params.n, RadialRule::cell_measure);

    // w = -u obeys w_t = S_k(D^2 w), the bounded-domain operator.
    std::vector<double> w(initial.values().begin(), initial.values().end());
    for (double& x : w) x = -x;
    std::vector<double> sk(w.size(), 0.0);
    const RadialSkOperator op(g, params);

    auto record = [&](double t) {
        FreeEvolutionSample s;
        s.t = t;
        const double ta = std::pow(t, params.alpha);
        const double tb = std::pow(t, params.beta);
        double sup = 0.0;
        for (double x : w) sup = std::max(sup, -x);
        for (int i = 0; i <= m; ++i) {
            const double u = -w[static_cast<std::size_t>(i)];
            s.rescaled_gap = std::max(s.rescaled_gap, std::abs(ta * u - target.profile(g.node(i) / tb)));
            if (u > 1e-10 * sup) s.support_radius = g.node(i);
        }
        const RadialProfile u_now(g, w);
        s.mass = radial_mass(u_now, params.n);
        s.barenblatt_support = target.support_radius(t);
        report.mass_drift = std::max(report.mass_drift,
                                     std::abs(radial_mass(u_now, params.n, RadialRule::cell_measure) - cell_mass0) /
                                         cell_mass0);
        report.mass_drift_trapezoid =
            std::max(report.mass_drift_trapezoid, std::abs(s.mass - report.initial_mass) / report.initial_mass);
        report.samples.push_back(s);
    };

    std::vector<double> targets;
    const double per_decade = std::max(options.samples_per_decade, 1);
    for (int j = 1;; ++j) {
        const double t = t0 * std::pow(10.0, j / per_decade);
        if (t >= t_end * (1.0 - 1e-12)) break;
        targets.push_back(t);
    }
    targets.push_back(t_end);

    record(t0);
    double t = t0;
    for (double tgt : targets) {
        while (t < tgt) {
            const double rate = op.evaluate(w, sk);
            double dt = rate > 1e-300 ? options.cfl_safety / rate : tgt - t;
            bool lands = false;
            if (t + dt >= tgt * (1.0 - 1e-14)) {
                dt = tgt - t;
                lands = true;
            }
            for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] += dt * sk[static_cast<std::size_t>(i)];
            if (!std::isfinite(w[0])) throw StabilityError("evolve_free: solution blew up at t = " + std::to_string(t));
            if (w[static_cast<std::size_t>(m - 1)] != 0.0) {
                throw DomainTooSmallError("evolve_free: support reached R_max at t = " + std::to_string(t));
            }
            t = lands ? tgt : t + dt;
            ++report.steps;
        }
        record(tgt);
    }
    report.gap_decreased = report.samples.back().rescaled_gap < report.samples.front().rescaled_gap;
    return report;
}

}  // namespace khess
