#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <khess/admissibility.hpp>
#include <khess/errors.hpp>
#include <khess/evolution.hpp>
#include <khess/quadrature.hpp>
#include <khess/stationary.hpp>

using namespace khess;

namespace {

StationarySolution theta_on(int n, int k, int m, double R = 1.0) {
    return profile_on_ball(R, make_params(n, k), RadialGrid(R, m), 8000);
}

EvolutionState state_of(const RadialProfile& u) { return EvolutionState{u, 0.0, 0.0, 0, 0.9}; }

}  // namespace

TEST(StableDt, HeatLimitAtOrigin) {
    for (int n = 2; n <= 5; ++n) {
        const ProblemParams p = make_params(n, 1);
        const RadialGrid g(1.0, 50);
        const RadialProfile u = RadialProfile::sample(g, [](double r) { return r * r - 1.0; });
        const double h = g.dr();
        EXPECT_NEAR(stable_dt(state_of(u), p), 0.9 * h * h / (2.0 * n), 1e-15);
    }
}

TEST(StableDt, QuartersWithGridHalving) {
    const ProblemParams p = make_params(3, 2);
    const double a = stable_dt(state_of(theta_on(3, 2, 128).profile), p);
    const double b = stable_dt(state_of(theta_on(3, 2, 256).profile), p);
    EXPECT_NEAR(a / b, 4.0, 0.1);
}

TEST(StableDt, FlatProfileGetsCap) {
    const ProblemParams p = make_params(3, 2);
    EXPECT_EQ(stable_dt(state_of(RadialProfile::zeros(RadialGrid(1.0, 16))), p, 0.25), 0.25);
}

TEST(Step, ZeroStaysZero) {
    const ProblemParams p = make_params(4, 2);
    EvolutionState s = state_of(RadialProfile::zeros(RadialGrid(1.0, 16)));
    s.dt = 1.0;
    for (int i = 0; i < 5; ++i) s = step(s, p);
    EXPECT_EQ(s.profile.sup_norm(), 0.0);
    EXPECT_EQ(s.step_count, 5);
    EXPECT_DOUBLE_EQ(s.t, 5.0);
}

TEST(Step, MonotoneInTimeAndPinned) {
    const ProblemParams p = make_params(3, 3);
    EvolutionState s = state_of(theta_on(3, 3, 64).profile.scaled(1.4));
    for (int j = 0; j < 50; ++j) {
        s.dt = stable_dt(s, p);
        const EvolutionState next = step(s, p);
        for (int i = 0; i <= 64; ++i) EXPECT_GE(next.profile[i], s.profile[i]);
        EXPECT_EQ(next.profile[64], 0.0);
        s = next;
    }
}

TEST(Step, RejectsUnstableDt) {
    const ProblemParams p = make_params(2, 2);
    EvolutionState s = state_of(theta_on(2, 2, 64).profile);
    s.dt = 1.5 * stable_dt(s, p) / s.cfl_safety;
    EXPECT_THROW(step(s, p), StabilityError);
}

TEST(Step, RejectsNonAdmissible) {
    const ProblemParams p = make_params(3, 3);
    EvolutionState s = state_of(RadialProfile::sample(RadialGrid(1.0, 32), [](double r) { return 0.5 * (1 - r * r); }));
    s.dt = 1e-6;
    EXPECT_THROW(step(s, p), AdmissibilityError);
}

TEST(Envelope, ScaledData) {
    const ProblemParams p = make_params(2, 2);
    const StationarySolution th = theta_on(2, 2, 64);
    const EnvelopeConstants up = envelope_constants(th.profile.scaled(2.0), th, p);
    EXPECT_NEAR(up.ratio_max, 2.0, 1e-14);
    EXPECT_NEAR(up.ratio_min, 2.0, 1e-12);
    EXPECT_NEAR(up.T_lower0, 2.0, 1e-14);
    EXPECT_EQ(up.T_upper0, 1.0);
    EXPECT_NEAR(up.C1, 1.0, 1e-13);
    EXPECT_EQ(up.C2, 0.0);
    const EnvelopeConstants down = envelope_constants(th.profile.scaled(0.5), th, p);
    EXPECT_NEAR(down.T_upper0, 0.5, 1e-12);
    EXPECT_NEAR(down.C2, 1.0, 1e-12);
    EXPECT_NEAR(down.T_upper(1.5), 1.0 / 3.5, 1e-12);
}

// The barrier gaps (1+t)^{1/(k-1)} T(t) - 1 must lie inside the brackets
// [-C2/(1+t), C1/(1+t)] for every t >= 0 (theta < 0 flips the inequalities).
TEST(Envelope, BracketsContainBarriers) {
    for (int k = 2; k <= 5; ++k) {
        for (double T0 : {1.01, 1.3, 2.0, 5.0}) {
            EnvelopeConstants env;
            env.k = k;
            env.T_lower0 = T0;
            env.T_upper0 = 1.0 / T0;
            const double s = std::pow(T0, 1.0 - k);
            env.C1 = (1.0 - s) / ((k - 1) * s);
            env.C2 = std::pow(env.T_upper0, 1.0 - k) - 1.0;
            for (double t = 0.0; t < 1e4; t = 1.7 * t + 0.01) {
                const double f = std::pow(1.0 + t, 1.0 / (k - 1));
                EXPECT_LE(f * env.T_lower(t) - 1.0, env.C1 / (1.0 + t) * (1 + 1e-12)) << k << " " << T0 << " " << t;
                EXPECT_LE(1.0 - f * env.T_upper(t), env.C2 / (1.0 + t) * (1 + 1e-12)) << k << " " << T0 << " " << t;
            }
        }
    }
}

TEST(SampleTimes, Geometric) {
    const std::vector<double> ts = geometric_sample_times(10.0);
    EXPECT_EQ(ts.front(), 0.0);
    EXPECT_DOUBLE_EQ(ts[1], 0.25);
    EXPECT_EQ(ts.back(), 10.0);
    for (std::size_t i = 1; i < ts.size(); ++i) EXPECT_GT(ts[i], ts[i - 1]);
    EXPECT_THROW(geometric_sample_times(0.0), ParameterError);
}

TEST(Perturbed, ClippedToAdmissibility) {
    const ProblemParams p = make_params(2, 2);
    const StationarySolution th = theta_on(2, 2, 128);
    const PerturbedData d = perturbed_initial_data(th, p, 0.2);
    EXPECT_LT(d.amplitude, 0.2);
    EXPECT_EQ(d.amplitude, 0.2 / std::exp2(d.halvings));
    EXPECT_TRUE(check_k_admissible_radial(d.profile, p).admissible);
    EXPECT_NEAR(d.profile[0], 1.3 * (1 + d.amplitude) * th.profile[0], 1e-15);
    EXPECT_THROW(perturbed_initial_data(th, p, 1.5), ParameterError);
}

TEST(Evolve, ThetaTracksSeparableSolution) {
    const ProblemParams p = make_params(3, 2);
    const StationarySolution th = theta_on(3, 2, 64);
    const std::vector<double> ts{0.5, 1.0};
    const DecayDiagnostics d = evolve_to(th.profile, 1.0, p, th, ts);
    ASSERT_EQ(d.samples.size(), 2u);
    EXPECT_EQ(d.samples.back().t, 1.0);
    EXPECT_LT(d.samples.back().sup_gap, 5.0 * th.residual);
    EXPECT_GT(d.steps, 100);
}

TEST(Evolve, SharpRateAndMassDecrease) {
    const ProblemParams p = make_params(2, 2);
    const StationarySolution th = theta_on(2, 2, 96);
    const DecayDiagnostics d = evolve_to(th.profile.scaled(0.5), 1000.0, p, th, geometric_sample_times(1000.0));
    EXPECT_NEAR(d.fitted_slope, -1.0, 0.05);
    EXPECT_GE(d.fitted_points, 20);
    for (std::size_t i = 1; i < d.samples.size(); ++i) EXPECT_LT(d.samples[i].mass, d.samples[i - 1].mass);
    // (1+t) gap -> |1 - s| sup|theta| / (k-1) with s = 2.
    const DecaySample& last = d.samples.back();
    EXPECT_NEAR((1.0 + last.t) * last.sup_gap, th.sup_norm, 0.02 * th.sup_norm);
}

TEST(Evolve, PerturbedDataStaysSandwiched) {
    const ProblemParams p = make_params(3, 3);
    const StationarySolution th = theta_on(3, 3, 64);
    const PerturbedData d = perturbed_initial_data(th, p, 0.2);
    const DecayDiagnostics diag = evolve_to(d.profile, 50.0, p, th, geometric_sample_times(50.0));
    for (const DecaySample& s : diag.samples) {
        EXPECT_LE(s.sandwich_violation, 1e-9) << s.t;
        EXPECT_LE(s.bracket_violation, 1e-9) << s.t;
        // theta < 0, so the lower barrier carries the larger factor.
        EXPECT_GE(s.T_lower, s.T_upper);
    }
}

TEST(Evolve, RejectsBadData) {
    const ProblemParams p = make_params(3, 2);
    const StationarySolution th = theta_on(3, 2, 32);
    const std::vector<double> ts{1.0};
    EXPECT_THROW(evolve_to(th.profile.scaled(-1.0), 1.0, p, th, ts), ParameterError);
    EXPECT_THROW(evolve_to(th.profile, 1.0, make_params(3, 1), th, ts), ParameterError);
    const StationarySolution other = theta_on(3, 2, 48);
    EXPECT_THROW(evolve_to(th.profile, 1.0, p, other, ts), ParameterError);
    EvolveOptions bad;
    bad.cfl_safety = 1.2;
    EXPECT_THROW(evolve_to(th.profile, 1.0, p, th, ts, bad), ParameterError);
}

TEST(Mass, ZeroAndSeparable) {
    const ProblemParams p = make_params(4, 3);
    const StationarySolution th = theta_on(4, 3, 64);
    const SeparableFamily fam(th, 1.0, p);
    std::vector<EvolutionState> hist;
    for (double t : {0.0, 0.5, 2.0, 30.0}) hist.push_back(EvolutionState{fam.at(t), t, 0.0, 0, 0.9});
    const auto series = mass_series(hist, p);
    EXPECT_TRUE(strictly_decreasing(series));
    for (const MassPoint& mp : series) {
        EXPECT_NEAR(mp.mass * std::pow(1.0 + mp.t, 0.5), series.front().mass, 1e-14 * series.front().mass);
    }
    std::vector<EvolutionState> zero{state_of(RadialProfile::zeros(RadialGrid(1.0, 8))),
                                     state_of(RadialProfile::zeros(RadialGrid(1.0, 8)))};
    const auto zs = mass_series(zero, p);
    EXPECT_EQ(zs[0].mass, 0.0);
    EXPECT_FALSE(strictly_decreasing(zs));
}
