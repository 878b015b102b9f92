#include "khess/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "khess/admissibility.hpp"
#include "khess/errors.hpp"
#include "khess/fit.hpp"
#include "khess/quadrature.hpp"
#include "khess/radial_hessian.hpp"

namespace khess {

namespace {

// S_k below -tol * (sup|u|/R^2)^k means u would decrease somewhere.
constexpr double kAdmissibilityTol = 1e-10;

double sk_tolerance(double sup, const RadialGrid& g, int k) {
    return kAdmissibilityTol * std::pow(sup / (g.radius() * g.radius()), k);
}

void check_sk_sign(std::span<const double> sk, int m, double tol, double t) {
    for (int i = 0; i < m; ++i) {
        if (sk[static_cast<std::size_t>(i)] < -tol) {
            std::ostringstream os;
            os << "profile left the admissible cone at t = " << t << ", node " << i
               << ": S_k = " << sk[static_cast<std::size_t>(i)];
            throw AdmissibilityError(os.str());
        }
    }
}

}  // namespace

double stable_dt(const EvolutionState& state, const ProblemParams& params, double max_dt) {
    const RadialSkOperator op(state.profile.grid(), params);
    std::vector<double> sk(static_cast<std::size_t>(state.profile.size()));
    const double rate = op.evaluate(state.profile.values(), sk);
    if (!(rate > 1e-300)) return max_dt;
    return std::min(max_dt, state.cfl_safety / rate);
}

EvolutionState step(const EvolutionState& state, const ProblemParams& params) {
    const RadialGrid& g = state.profile.grid();
    const int m = g.cells();
    const RadialSkOperator op(g, params);
    std::vector<double> sk(static_cast<std::size_t>(m) + 1, 0.0);
    const double rate = op.evaluate(state.profile.values(), sk);
    if (!(state.dt >= 0.0) || state.dt * rate > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "explicit step dt = " << state.dt << " exceeds the stability limit " << 1.0 / rate;
        throw StabilityError(os.str());
    }
    const double sup = state.profile.sup_norm();
    check_sk_sign(sk, m, sk_tolerance(sup, g, params.k), state.t);

    std::vector<double> next(state.profile.values().begin(), state.profile.values().end());
    for (int i = 0; i < m; ++i) next[static_cast<std::size_t>(i)] += state.dt * sk[static_cast<std::size_t>(i)];
    next.back() = 0.0;
    EvolutionState out{RadialProfile(g, std::move(next)), state.t + state.dt, state.dt, state.step_count + 1,
                       state.cfl_safety};
    if (out.profile.sup_norm() > sup * (1.0 + 1e-14)) {
        std::ostringstream os;
        os << "max-norm grew from " << sup << " to " << out.profile.sup_norm() << " with dt = " << state.dt;
        throw StabilityError(os.str());
    }
    return out;
}

double EnvelopeConstants::T_lower(double t) const {
    return std::pow(std::pow(T_lower0, 1.0 - k) + t, -1.0 / (k - 1));
}

double EnvelopeConstants::T_upper(double t) const {
    return std::pow(std::pow(T_upper0, 1.0 - k) + t, -1.0 / (k - 1));
}

EnvelopeConstants envelope_constants(const RadialProfile& u0, const StationarySolution& theta,
                                     const ProblemParams& params) {
    if (params.k < 2) throw ParameterError("envelope_constants: k must be >= 2");
    const RadialProfile& th = theta.profile;
    if (!(u0.grid() == th.grid())) throw ParameterError("envelope_constants: grids differ");
    const int m = u0.grid().cells();
    EnvelopeConstants env;
    env.k = params.k;
    env.ratio_max = -std::numeric_limits<double>::infinity();
    env.ratio_min = std::numeric_limits<double>::infinity();
    auto include = [&](double ratio) {
        env.ratio_max = std::max(env.ratio_max, ratio);
        env.ratio_min = std::min(env.ratio_min, ratio);
    };
    for (int i = 0; i < m; ++i) include(u0[i] / th[i]);
    // Both vanish at r = R: compare second-order one-sided slopes there.
    const double su = 3.0 * u0[m] - 4.0 * u0[m - 1] + u0[m - 2];
    const double st = 3.0 * th[m] - 4.0 * th[m - 1] + th[m - 2];
    include(su / st);
    if (!(env.ratio_min > 0.0)) {
        throw ParameterError("envelope_constants: initial data must be negative inside the ball");
    }
    const int k = params.k;
    env.T_lower0 = std::max(env.ratio_max, 1.0);
    env.T_upper0 = std::min(env.ratio_min, 1.0);
    const double s_lo = std::pow(env.T_lower0, 1.0 - k);
    env.C1 = (1.0 - s_lo) / ((k - 1) * s_lo);
    env.C2 = std::pow(env.T_upper0, 1.0 - k) - 1.0;
    return env;
}

PerturbedData perturbed_initial_data(const StationarySolution& theta, const ProblemParams& params,
                                     double amplitude, double scale) {
    if (!(scale > 0.0)) throw ParameterError("perturbed_initial_data: scale must be > 0");
    if (!(amplitude >= 0.0 && amplitude < 1.0)) {
        throw ParameterError("perturbed_initial_data: amplitude must lie in [0, 1)");
    }
    const RadialGrid& g = theta.profile.grid();
    PerturbedData out{theta.profile, amplitude, 0};
    constexpr int kMaxHalvings = 40;
    for (; out.halvings <= kMaxHalvings; ++out.halvings) {
        std::vector<double> v(static_cast<std::size_t>(g.node_count()));
        for (int i = 0; i < g.node_count(); ++i) {
            const double wave = std::cos(std::numbers::pi * g.node(i) / g.radius());
            v[static_cast<std::size_t>(i)] = scale * theta.profile[i] * (1.0 + out.amplitude * wave);
        }
        v.back() = 0.0;
        out.profile = RadialProfile(g, std::move(v));
        if (check_k_admissible_radial(out.profile, params).admissible) return out;
        out.amplitude *= 0.5;
    }
    throw AdmissibilityError("perturbed_initial_data: no admissible amplitude found");
}

std::vector<double> geometric_sample_times(double t_end, int per_octave) {
    if (!(t_end > 0.0)) throw ParameterError("geometric_sample_times: t_end must be > 0");
    if (per_octave < 1) throw ParameterError("geometric_sample_times: per_octave must be >= 1");
    std::vector<double> times{0.0};
    for (int j = -2 * per_octave;; ++j) {
        const double t = std::exp2(static_cast<double>(j) / per_octave);
        if (t > t_end * (1.0 + 1e-12)) break;
        times.push_back(t);
    }
    if (times.back() < t_end * (1.0 - 1e-12)) times.push_back(t_end);
    return times;
}

DecayDiagnostics evolve_to(const RadialProfile& u0, double t_end, const ProblemParams& params,
                           const StationarySolution& theta, std::span<const double> sample_times,
                           const EvolveOptions& options) {
    if (params.k < 2) throw ParameterError("evolve_to: k must be >= 2");
    if (!(t_end > 0.0)) throw ParameterError("evolve_to: t_end must be > 0");
    if (!(options.cfl_safety > 0.0 && options.cfl_safety < 1.0)) {
        throw ParameterError("evolve_to: cfl_safety must lie in (0, 1)");
    }
    const RadialGrid& g = u0.grid();
    if (!(g == theta.profile.grid())) throw ParameterError("evolve_to: theta lives on a different grid");
    const int m = g.cells();
    if (u0[m] != 0.0) throw ParameterError("evolve_to: initial data must vanish at r = R");
    for (int i = 0; i < m; ++i) {
        if (!(u0[i] < 0.0)) throw ParameterError("evolve_to: initial data must be negative inside the ball");
    }
    const AdmissibilityReport adm = check_k_admissible_radial(u0, params);
    if (!adm.admissible) {
        throw AdmissibilityError("evolve_to: initial data not k-admissible at node " + std::to_string(*adm.node) +
                                 " (sigma_" + std::to_string(*adm.order) + " = " + std::to_string(adm.value) + ")");
    }

    const int k = params.k;
    DecayDiagnostics diag{{}, envelope_constants(u0, theta, params), 0.0, 0, options.fit_t_min,
                          options.fit_t_max, 0, std::numeric_limits<double>::infinity(), 0.0, u0};
    const EnvelopeConstants& env = diag.envelope;
    const RadialSkOperator op(g, params);
    std::vector<double> u(u0.values().begin(), u0.values().end());
    std::vector<double> sk(u.size(), 0.0);
    std::span<const double> th = theta.profile.values();

    auto record = [&](double t) {
        DecaySample s;
        s.t = t;
        const double factor = std::pow(1.0 + t, 1.0 / (k - 1));
        s.T_lower = env.T_lower(t);
        s.T_upper = env.T_upper(t);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double gap = factor * u[i] - th[i];
            s.sup_gap = std::max(s.sup_gap, std::abs(gap));
            s.sandwich_violation = std::max({s.sandwich_violation, s.T_lower * th[i] - u[i], u[i] - s.T_upper * th[i]});
            const double lo = env.C1 * th[i] / (1.0 + t);
            const double hi = -env.C2 * th[i] / (1.0 + t);
            s.bracket_violation = std::max({s.bracket_violation, lo - gap, gap - hi});
        }
        s.mass = radial_mass(RadialProfile(g, u), params.n);
        diag.samples.push_back(s);
    };

    std::vector<double> targets;
    for (double t : sample_times) {
        if (t >= 0.0 && t <= t_end) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    if (targets.empty() || targets.back() < t_end) targets.push_back(t_end);

    double t = 0.0;
    double sup = u0.sup_norm();
    for (double target : targets) {
        while (t < target) {
            const double rate = op.evaluate(u, sk);
            check_sk_sign(sk, m, sk_tolerance(sup, g, k), t);
            double dt = rate > 1e-300 ? options.cfl_safety / rate : options.max_dt;
            dt = std::min(dt, options.max_dt);
            bool lands = false;
            if (t + dt >= target * (1.0 - 1e-14)) {
                dt = target - t;
                lands = true;
            }
            double next_sup = 0.0;
            for (int i = 0; i < m; ++i) {
                const auto fi = static_cast<std::size_t>(i);
                u[fi] += dt * sk[fi];
                next_sup = std::max(next_sup, std::abs(u[fi]));
            }
            if (!std::isfinite(next_sup) || next_sup > sup * (1.0 + 1e-14)) {
                std::ostringstream os;
                os << "max-norm grew from " << sup << " to " << next_sup << " at t = " << t << " with dt = " << dt;
                throw StabilityError(os.str());
            }
            sup = next_sup;
            t = lands ? target : t + dt;
            ++diag.steps;
            if (!lands) {
                diag.min_dt = std::min(diag.min_dt, dt);
                diag.max_dt = std::max(diag.max_dt, dt);
            }
        }
        record(target);
    }

    std::vector<double> xs;
    std::vector<double> ys;
    for (const DecaySample& s : diag.samples) {
        if (s.t >= options.fit_t_min && s.t <= options.fit_t_max && s.sup_gap > 0.0) {
            xs.push_back(1.0 + s.t);
            ys.push_back(s.sup_gap);
        }
    }
    if (xs.size() >= 2) {
        const LineFit fit = fit_loglog(xs, ys);
        diag.fitted_slope = fit.slope;
        diag.fitted_points = fit.points;
    } else {
        diag.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    }
    diag.final_profile = RadialProfile(g, std::move(u));
    return diag;
}

std::vector<MassPoint> mass_series(std::span<const EvolutionState> history, const ProblemParams& params) {
    std::vector<MassPoint> out;
    out.reserve(history.size());
    for (const EvolutionState& s : history) out.push_back({s.t, radial_mass(s.profile, params.n)});
    return out;
}

bool strictly_decreasing(std::span<const MassPoint> series) {
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (!(series[i].mass < series[i - 1].mass)) return false;
    }
    return true;
}

}  // namespace khess
