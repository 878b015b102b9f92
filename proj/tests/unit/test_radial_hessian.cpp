#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <khess/errors.hpp>
#include <khess/radial_hessian.hpp>
#include <khess/stationary.hpp>
#include <khess/symmetric.hpp>

using namespace khess;

namespace {

struct Case {
    int n;
    int k;
};

const Case kTorsionCases[] = {{2, 2}, {3, 2}, {3, 3}, {4, 3}, {5, 5}, {2, 1}, {4, 1}};

// Max error of the discrete operator against the analytic eigenvalue form on
// u = 0.5 (r^2 - 1) + 0.1 r^4 over nodes 1..m-1 and the origin limit.
double smooth_error(const ProblemParams& p, int m) {
    const RadialGrid g(1.0, m);
    const RadialProfile u = RadialProfile::sample(g, [](double r) { return 0.5 * (r * r - 1.0) + 0.1 * ipow(r, 4); });
    const RadialProfile sk = apply_sk_radial(u, p);
    double err = std::abs(sk[0] - static_cast<double>(binomial(p.n, p.k)));
    for (int i = 1; i < m; ++i) {
        const double r = g.node(i);
        const double up = r + 0.4 * r * r * r;
        const double upp = 1.0 + 1.2 * r * r;
        err = std::max(err, std::abs(sk[i] - radial_sk_pointwise(up, upp, r, p.n, p.k)));
    }
    return err;
}

}  // namespace

TEST(ApplySk, TorsionIsOneEverywhere) {
    for (const Case c : kTorsionCases) {
        const ProblemParams p = make_params(c.n, c.k);
        for (double R : {0.5, 1.0, 2.0}) {
            for (int m : {4, 17, 256}) {
                const RadialGrid g(R, m);
                const RadialProfile sk = apply_sk_radial(torsion_solution(R, p, g), p);
                // Rounding in sampled second differences scales like eps m^2.
                const double tol = 10.0 * std::numeric_limits<double>::epsilon() * m * m;
                for (int i = 0; i <= m; ++i) EXPECT_NEAR(sk[i], 1.0, tol) << c.n << c.k << " R=" << R << " i=" << i;
            }
        }
    }
}

TEST(ApplySk, ZeroStaysZero) {
    const ProblemParams p = make_params(4, 3);
    const RadialGrid g(1.0, 32);
    const RadialProfile sk = apply_sk_radial(RadialProfile::zeros(g), p);
    EXPECT_EQ(sk.sup_norm(), 0.0);
}

TEST(ApplySk, RejectsCoarseGrid) {
    const ProblemParams p = make_params(2, 2);
    EXPECT_THROW(apply_sk_radial(RadialProfile::zeros(RadialGrid(1.0, 3)), p), ParameterError);
}

TEST(ApplySk, OriginLimit) {
    const ProblemParams p = make_params(4, 2);
    const RadialGrid g(1.0, 10);
    const RadialProfile u = RadialProfile::sample(g, [](double r) { return std::cos(r); });
    const double h = g.dr();
    const double want = 6.0 * ipow(2.0 * (u[1] - u[0]) / (h * h), 2);
    EXPECT_NEAR(apply_sk_radial(u, p)[0], want, 1e-12 * std::abs(want));
}

TEST(ApplySk, GaussianLaplacianSecondOrder) {
    const ProblemParams p = make_params(2, 1);
    const double C = 1.7;
    double prev = 0.0;
    for (int m : {32, 64, 128, 256}) {
        const RadialGrid g(4.0, m);
        const RadialProfile u = RadialProfile::sample(g, [&](double r) { return C * std::exp(-r * r / 4.0); });
        const RadialProfile sk = apply_sk_radial(u, p);
        double err = 0.0;
        for (int i = 0; i < m; ++i) {
            const double r = g.node(i);
            err = std::max(err, std::abs(sk[i] - (r * r / 4.0 - 1.0) * C * std::exp(-r * r / 4.0)));
        }
        if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.4) << m;
        prev = err;
    }
}

TEST(ApplySk, SecondOrderOnSmoothProfiles) {
    for (const Case c : {Case{2, 2}, Case{3, 2}, Case{3, 3}, Case{5, 3}, Case{5, 5}}) {
        const ProblemParams p = make_params(c.n, c.k);
        const double e1 = smooth_error(p, 64);
        const double e2 = smooth_error(p, 128);
        const double e3 = smooth_error(p, 256);
        EXPECT_NEAR(e1 / e2, 4.0, 0.5) << c.n << c.k;
        EXPECT_NEAR(e2 / e3, 4.0, 0.5) << c.n << c.k;
    }
}

// Sum of V_i S_i / c_nk telescopes to the outermost flux for arbitrary data.
TEST(ApplySk, FluxesTelescope) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (const Case c : {Case{2, 2}, Case{3, 3}, Case{5, 4}}) {
        const ProblemParams p = make_params(c.n, c.k);
        const RadialGrid g(1.5, 40);
        std::vector<double> v(41);
        for (double& x : v) x = dist(rng);
        const RadialProfile u(g, v);
        const RadialSkOperator op(g, p);
        std::vector<double> sk(41, 0.0);
        op.evaluate(u.values(), sk);
        double total = 0.0;
        for (int i = 0; i < 40; ++i) total += op.cell_measures()[static_cast<std::size_t>(i)] * sk[static_cast<std::size_t>(i)];
        const FluxField f = compute_fluxes(u, p);
        ASSERT_EQ(f.flux.size(), 40u);
        EXPECT_NEAR(total / p.c_nk, f.flux.back(), 1e-10 * (1.0 + std::abs(f.flux.back())));
    }
}

TEST(ApplySk, CellMeasuresSumToBallMeasure) {
    const ProblemParams p = make_params(5, 2);
    const RadialGrid g(2.0, 64);
    const RadialSkOperator op(g, p);
    double total = 0.0;
    for (double v : op.cell_measures()) total += v;
    EXPECT_NEAR(total, std::pow(g.face(63), 5) / 5.0, 1e-12 * total);
}

TEST(Fluxes, FirstFaceAwayFromOrigin) {
    const ProblemParams p = make_params(3, 2);
    const RadialGrid g(1.0, 8);
    const RadialProfile u = RadialProfile::sample(g, [](double r) { return r * r; });
    const FluxField f = compute_fluxes(u, p);
    const double h = g.dr();
    EXPECT_NEAR(f.flux[0], (h / 2) * ipow(h, 2), 1e-15);
}

TEST(Residual, ZeroProfile) {
    const ProblemParams p = make_params(3, 2);
    EXPECT_EQ(stationary_residual(RadialProfile::zeros(RadialGrid(1.0, 16)), p), 0.0);
}

TEST(Residual, TorsionIsNotStationary) {
    for (const Case c : {Case{2, 2}, Case{3, 3}, Case{5, 4}}) {
        const ProblemParams p = make_params(c.n, c.k);
        const RadialGrid g(1.0, 64);
        const RadialProfile e = torsion_solution(1.0, p, g);
        double want = 0.0;
        for (int i = 0; i < 64; ++i) want = std::max(want, std::abs(1.0 + e[i] / (c.k - 1)));
        EXPECT_NEAR(stationary_residual(e, p), want, 1e-12);
        EXPECT_GT(want, 0.5);
    }
}

TEST(Residual, RejectsLinearCase) {
    EXPECT_THROW(stationary_residual(RadialProfile::zeros(RadialGrid(1.0, 16)), make_params(3, 1)), ParameterError);
}
