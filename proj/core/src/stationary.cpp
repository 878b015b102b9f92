#include "khess/stationary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "khess/errors.hpp"
#include "khess/radial_hessian.hpp"
#include "khess/symmetric.hpp"

namespace khess {

namespace {

constexpr double kNegativeRootSlack = 1e-14;
constexpr double kCrossingTol = 1e-12;

// x^{1/k} for x >= 0; tiny negative round-off is clamped, anything else is a bug.
double root_k(double x, int k) {
    if (x < 0.0) {
        if (x < -kNegativeRootSlack) {
            throw ConsistencyError("fractional power of negative quantity " + std::to_string(x));
        }
        return 0.0;
    }
    return std::pow(x, 1.0 / k);
}

struct OdeState {
    double theta;
    double flux;  // v = r^{n-k} (theta')^k
};

class RadialShooter {
public:
    RadialShooter(const ProblemParams& p, double center) : p_(p), center_(center) {
        // theta ~ center + a r^2 + b r^4 from the origin limit binom(n,k) (2a)^k = -center/(k-1).
        a_ = 0.5 * root_k(-center / ((p.k - 1) * p.binom_nk()), p.k);
        b_ = a_ * a_ * p.n / (center * (p.n + 2.0) * 2.0 * p.k);
        inv_lin_ = 1.0 / ((p.k - 1) * p.c_nk);
    }

    // Radius at which the two-term series would vanish; used only to size the first pass.
    double length_scale() const { return std::sqrt(-center_ / a_); }

    OdeState series(double r) const {
        const double r2 = r * r;
        const double rn = ipow(r, p_.n);
        return {center_ + a_ * r2 + b_ * r2 * r2,
                -(center_ * rn / p_.n + a_ * rn * r2 / (p_.n + 2.0)) * inv_lin_};
    }

    double series_slope(double r) const { return 2.0 * a_ * r + 4.0 * b_ * r * r * r; }

    double slope(double r, double flux) const {
        if (r == 0.0) return 0.0;
        return root_k(flux / ipow(r, p_.n - p_.k), p_.k);
    }

    OdeState rhs(double r, const OdeState& y) const {
        return {slope(r, y.flux), -ipow(r, p_.n - 1) * y.theta * inv_lin_};
    }

    OdeState rk4(double r, const OdeState& y, double h) const {
        const OdeState k1 = rhs(r, y);
        const OdeState k2 = rhs(r + 0.5 * h, {y.theta + 0.5 * h * k1.theta, y.flux + 0.5 * h * k1.flux});
        const OdeState k3 = rhs(r + 0.5 * h, {y.theta + 0.5 * h * k2.theta, y.flux + 0.5 * h * k2.flux});
        const OdeState k4 = rhs(r + h, {y.theta + h * k3.theta, y.flux + h * k3.flux});
        return {y.theta + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
                y.flux + h / 6.0 * (k1.flux + 2.0 * k2.flux + 2.0 * k3.flux + k4.flux)};
    }

    // RK4 over [r, r + h] with substeps of at most h (r/L)^{3/4}. The system is
    // singular at the origin (d^2 theta'/dv^2 ~ r^{1-2n}), so plain steps of size
    // h near r = 0 leave an O(h^2) global error; grading restores fourth order.
    OdeState advance(double r, const OdeState& y, double h) const {
        const double scale = length_scale();
        int substeps = 1;
        if (r < scale) substeps = static_cast<int>(std::ceil(std::pow(scale / std::max(r, h), 0.75)));
        const double hs = h / substeps;
        OdeState out = y;
        for (int j = 0; j < substeps; ++j) out = rk4(r + j * hs, out, hs);
        return out;
    }

    // Integrates with step h until theta >= 0 and returns the bisected crossing radius.
    double crossing(double h, double r_max) const {
        constexpr int kSeriesSteps = 3;
        double r = kSeriesSteps * h;
        OdeState y = series(r);
        if (y.theta >= 0.0) throw ConsistencyError("shooting step too coarse: series start already crossed zero");
        while (r < r_max) {
            const OdeState next = advance(r, y, h);
            if (next.theta >= 0.0) {
                double lo = 0.0;
                double hi = h;
                while (hi - lo > kCrossingTol * 0.1) {
                    const double mid = 0.5 * (lo + hi);
                    if (rk4(r, y, mid).theta >= 0.0) hi = mid; else lo = mid;
                }
                return r + 0.5 * (lo + hi);
            }
            if (next.flux < 0.0 || next.theta < y.theta) {
                throw ConsistencyError("shooting lost monotonicity at r = " + std::to_string(r));
            }
            y = next;
            r += h;
        }
        throw ConsistencyError("shooting diverged: no zero crossing before r_max = " + std::to_string(r_max));
    }

private:
    ProblemParams p_;
    double center_;
    double a_ = 0.0;
    double b_ = 0.0;
    double inv_lin_ = 0.0;
};

double crossing_radius(const RadialShooter& shooter, int ode_steps) {
    const double scale = shooter.length_scale();
    const double coarse = shooter.crossing(scale / 1000.0, 50.0 * scale);
    return shooter.crossing(coarse / ode_steps, 2.0 * coarse);
}

void require_stationary_k(const ProblemParams& params) {
    if (params.k < 2) throw ParameterError("the stationary problem requires k >= 2");
}

StationarySolution finish(double radius, const ProblemParams& params, RadialProfile profile,
                          double boundary_slope, double unit_crossing) {
    for (int i = 0; i + 1 < profile.size(); ++i) {
        if (profile[i] > profile[i + 1]) {
            throw ConsistencyError("stationary profile not monotone at node " + std::to_string(i));
        }
    }
    StationarySolution sol{std::move(profile), radius, 0.0, boundary_slope, 0.0, 0.0, unit_crossing};
    sol.center_value = sol.profile[0];
    if (!(sol.center_value < 0.0)) throw ConsistencyError("stationary profile has non-negative centre value");
    sol.sup_norm = std::abs(sol.center_value);
    sol.residual = stationary_residual(sol.profile, params);
    return sol;
}

}  // namespace

double ShootingResult::theta_at(double r) const {
    const RadialGrid& g = raw_profile.grid();
    const double h = g.dr();
    const int i = std::clamp(static_cast<int>(r / h), 0, g.cells() - 1);
    const double s = (r - g.node(i)) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const auto fi = static_cast<std::size_t>(i);
    return (2.0 * s3 - 3.0 * s2 + 1.0) * raw_profile[i] + (s3 - 2.0 * s2 + s) * h * raw_slope[fi] +
           (-2.0 * s3 + 3.0 * s2) * raw_profile[i + 1] + (s3 - s2) * h * raw_slope[fi + 1];
}

double ShootingResult::slope_at(double r) const {
    const RadialGrid& g = raw_profile.grid();
    const double h = g.dr();
    const int i = std::clamp(static_cast<int>(r / h), 0, g.cells() - 1);
    const double s = (r - g.node(i)) / h;
    const double s2 = s * s;
    const auto fi = static_cast<std::size_t>(i);
    return (6.0 * s2 - 6.0 * s) / h * raw_profile[i] + (3.0 * s2 - 4.0 * s + 1.0) * raw_slope[fi] +
           (-6.0 * s2 + 6.0 * s) / h * raw_profile[i + 1] + (3.0 * s2 - 2.0 * s) * raw_slope[fi + 1];
}

ShootingResult shoot_profile(const ProblemParams& params, int ode_steps, double center_value) {
    require_stationary_k(params);
    if (ode_steps < 1000) throw ParameterError("shoot_profile: ode_steps must be >= 1000");
    if (!(center_value < 0.0)) throw ParameterError("shoot_profile: centre value must be negative");

    const RadialShooter shooter(params, center_value);
    const double radius = crossing_radius(shooter, ode_steps);

    // Final pass on the uniform grid [0, R1] so the samples can be interpolated.
    const RadialGrid grid(radius, ode_steps);
    const double h = grid.dr();
    std::vector<double> theta(static_cast<std::size_t>(ode_steps) + 1);
    std::vector<double> slope(theta.size());
    constexpr int kSeriesSteps = 3;
    for (int j = 0; j <= kSeriesSteps; ++j) {
        theta[static_cast<std::size_t>(j)] = shooter.series(j * h).theta;
        slope[static_cast<std::size_t>(j)] = shooter.series_slope(j * h);
    }
    OdeState y = shooter.series(kSeriesSteps * h);
    for (int j = kSeriesSteps; j < ode_steps; ++j) {
        y = shooter.advance(j * h, y, h);
        theta[static_cast<std::size_t>(j) + 1] = y.theta;
        slope[static_cast<std::size_t>(j) + 1] = shooter.slope((j + 1) * h, y.flux);
    }
    theta.back() = 0.0;
    return ShootingResult{center_value, radius, RadialProfile(grid, std::move(theta)), std::move(slope)};
}

ScalingLaw scaling_for_lambda(double lambda, int k) {
    if (k < 2) throw ParameterError("scaling_for_lambda: k must be >= 2");
    if (!(lambda < 0.0)) throw ParameterError("scaling_for_lambda: lambda must be negative");
    return {lambda, std::pow(-lambda * (k - 1), 1.0 / (k - 1))};
}

StationarySolution profile_on_ball(double radius, const ProblemParams& params, const RadialGrid& grid,
                                   const ShootingResult& shot) {
    require_stationary_k(params);
    if (!(radius > 0.0)) throw ParameterError("profile_on_ball: radius must be > 0");
    if (std::abs(grid.radius() - radius) > 1e-14 * radius) {
        throw ParameterError("profile_on_ball: grid radius does not match the ball");
    }
    const double mu = radius / shot.crossing_radius;
    const double amp = std::pow(mu, 2.0 * params.k / (params.k - 1));
    std::vector<double> values(static_cast<std::size_t>(grid.node_count()));
    for (int i = 0; i < grid.node_count(); ++i) {
        const double x = std::min(grid.node(i) / mu, shot.crossing_radius);
        values[static_cast<std::size_t>(i)] = amp * shot.theta_at(x);
    }
    values.back() = 0.0;
    const double slope = amp / mu * shot.slope_at(shot.crossing_radius);
    const double unit = shot.crossing_radius * std::pow(-shot.center_value, -(params.k - 1.0) / (2.0 * params.k));
    return finish(radius, params, RadialProfile(grid, std::move(values)), slope, unit);
}

StationarySolution profile_on_ball(double radius, const ProblemParams& params, const RadialGrid& grid,
                                   int ode_steps) {
    return profile_on_ball(radius, params, grid, shoot_profile(params, ode_steps, -1.0));
}

StationarySolution profile_on_ball_direct(double radius, const ProblemParams& params, const RadialGrid& grid,
                                          int ode_steps) {
    require_stationary_k(params);
    if (!(radius > 0.0)) throw ParameterError("profile_on_ball_direct: radius must be > 0");
    auto crossing_for = [&](double log_depth) {
        return crossing_radius(RadialShooter(params, -std::exp(log_depth)), ode_steps);
    };
    // R1 grows monotonically with |theta(0)|; bracket in log|theta(0)| then bisect.
    double lo = 0.0;
    double hi = 0.0;
    double r_lo = crossing_for(lo);
    double r_hi = r_lo;
    while (r_lo > radius) {
        lo -= 2.0;
        r_lo = crossing_for(lo);
    }
    while (r_hi < radius) {
        hi += 2.0;
        r_hi = crossing_for(hi);
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double r_mid = crossing_for(mid);
        if (std::abs(r_mid - radius) <= kCrossingTol * radius) {
            lo = hi = mid;
            break;
        }
        if (r_mid < radius) lo = mid; else hi = mid;
    }
    const ShootingResult shot = shoot_profile(params, ode_steps, -std::exp(0.5 * (lo + hi)));
    std::vector<double> values(static_cast<std::size_t>(grid.node_count()));
    for (int i = 0; i < grid.node_count(); ++i) {
        values[static_cast<std::size_t>(i)] = shot.theta_at(std::min(grid.node(i), shot.crossing_radius));
    }
    values.back() = 0.0;
    const double unit = shot.crossing_radius * std::pow(-shot.center_value, -(params.k - 1.0) / (2.0 * params.k));
    return finish(radius, params, RadialProfile(grid, std::move(values)), shot.slope_at(shot.crossing_radius), unit);
}

double torsion_constant(const ProblemParams& params) {
    return 0.5 * std::pow(params.n * params.c_nk, -1.0 / params.k);
}

RadialProfile torsion_solution(double radius, const ProblemParams& params, const RadialGrid& grid) {
    if (!(radius > 0.0)) throw ParameterError("torsion_solution: radius must be > 0");
    const double c = torsion_constant(params);
    const double r2 = radius * radius;
    RadialProfile e = RadialProfile::sample(grid, [&](double r) { return c * (r * r - r2); });
    return e;
}

BoundReport check_ball_bound(const StationarySolution& sol, const ProblemParams& params) {
    const int k = params.k;
    const double R = sol.radius;
    const double bound = std::pow(std::pow(2.0 * R, k) * ipow(R, k) / ((k - 1) * params.c_nk), 1.0 / (k - 1));
    return {bound, sol.sup_norm, sol.sup_norm <= bound};
}

BoundReport check_torsion_bound(const StationarySolution& sol, const ProblemParams& params) {
    const int k = params.k;
    const double e_sup = torsion_constant(params) * sol.radius * sol.radius;
    const double bound = std::pow(ipow(e_sup, k) / (k - 1), 1.0 / (k - 1));
    return {bound, sol.sup_norm, sol.sup_norm <= bound};
}

SeparableFamily::SeparableFamily(StationarySolution theta, double t0_factor, const ProblemParams& params)
    : theta_(std::move(theta)), t0_(t0_factor), k_(params.k) {
    if (!(t0_factor > 0.0)) throw ParameterError("SeparableFamily: T(0) must be > 0");
    if (k_ < 2) throw ParameterError("SeparableFamily: k must be >= 2");
}

double SeparableFamily::time_factor(double t) const {
    return std::pow(std::pow(t0_, 1.0 - k_) + t, -1.0 / (k_ - 1));
}

RadialProfile SeparableFamily::at(double t) const { return theta_.profile.scaled(time_factor(t)); }

double SeparableFamily::ratio_to_unit(double t) const {
    return std::pow((1.0 + t) / (std::pow(t0_, 1.0 - k_) + t), 1.0 / (k_ - 1));
}

}  // namespace khess
