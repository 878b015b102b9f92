#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <khess/admissibility.hpp>
#include <khess/errors.hpp>
#include <khess/grid.hpp>
#include <khess/params.hpp>
#include <khess/symmetric.hpp>

using namespace khess;

namespace {

// Sum over all j-subsets by bitmask enumeration.
double brute_sigma(const std::vector<double>& eigs, int j) {
    const int n = static_cast<int>(eigs.size());
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != j) continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) prod *= eigs[static_cast<std::size_t>(i)];
        }
        total += prod;
    }
    return total;
}

double brute_binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(Params, ThreeTwo) {
    const ProblemParams p = make_params(3, 2);
    EXPECT_DOUBLE_EQ(p.c_nk, 1.0);
    EXPECT_DOUBLE_EQ(p.alpha, 3.0 / 7.0);
    EXPECT_DOUBLE_EQ(p.beta, 1.0 / 7.0);
}

TEST(Params, HeatExponents) {
    const ProblemParams p = make_params(2, 1);
    EXPECT_DOUBLE_EQ(p.alpha, 1.0);
    EXPECT_DOUBLE_EQ(p.beta, 0.5);
    EXPECT_FALSE(p.gamma.has_value());
    EXPECT_THROW(p.gamma_value(), ParameterError);
}

TEST(Params, TwoTwoGamma) {
    const ProblemParams p = make_params(2, 2);
    EXPECT_DOUBLE_EQ(p.c_nk, 0.5);
    EXPECT_DOUBLE_EQ(p.alpha, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(p.beta, 1.0 / 6.0);
    ASSERT_TRUE(p.gamma.has_value());
    EXPECT_NEAR(*p.gamma, 0.25 * std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(Params, RejectsBadDomain) {
    EXPECT_THROW(make_params(1, 1), ParameterError);
    EXPECT_THROW(make_params(3, 0), ParameterError);
    EXPECT_THROW(make_params(3, 4), ParameterError);
}

TEST(Params, ExponentIdentities) {
    for (int n = 2; n <= 10; ++n) {
        for (int k = 1; k <= n; ++k) {
            const ProblemParams p = make_params(n, k);
            EXPECT_NEAR(p.alpha, n * p.beta, 1e-14) << n << "," << k;
            EXPECT_NEAR(p.alpha * (k - 1) + 2 * k * p.beta, 1.0, 1e-14) << n << "," << k;
            EXPECT_NEAR(p.c_nk, brute_binomial(n, k) / n, 1e-12 * p.c_nk);
        }
    }
}

TEST(Params, BinomialExactToSixty) {
    EXPECT_EQ(binomial(60, 30), 118264581564861424ULL);
    EXPECT_EQ(binomial(10, 0), 1ULL);
    EXPECT_THROW(binomial(5, 6), ParameterError);
    EXPECT_THROW(binomial(61, 2), ParameterError);
    for (int n = 0; n <= 60; ++n) {
        for (int k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
}

TEST(Params, UnitBallVolume) {
    EXPECT_NEAR(unit_ball_volume(2), std::numbers::pi, 1e-14);
    EXPECT_NEAR(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-14);
    EXPECT_NEAR(unit_ball_volume(4), std::numbers::pi * std::numbers::pi / 2.0, 1e-14);
}

TEST(Sigma, AllOnes) {
    const std::vector<double> e{1.0, 1.0, 1.0};
    EXPECT_DOUBLE_EQ(sigma_j(e, 2), 3.0);
    EXPECT_DOUBLE_EQ(sigma_j(e, 0), 1.0);
}

TEST(Sigma, EqualEigenvalues) {
    for (int n = 2; n <= 8; ++n) {
        const std::vector<double> e(static_cast<std::size_t>(n), 0.7);
        for (int k = 1; k <= n; ++k) {
            EXPECT_NEAR(sigma_j(e, k), static_cast<double>(binomial(n, k)) * std::pow(0.7, k), 1e-13);
        }
    }
}

TEST(Sigma, MatchesSubsetEnumeration) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> e(static_cast<std::size_t>(n));
            for (double& x : e) x = dist(rng);
            for (int j = 1; j <= n; ++j) {
                const double want = brute_sigma(e, j);
                double scale = 1.0;
                for (double x : e) scale *= std::max(1.0, std::abs(x));
                EXPECT_NEAR(sigma_j(e, j), want, 1e-12 * scale * static_cast<double>(binomial(n, j)));
            }
        }
    }
}

TEST(Sigma, IndexOutOfRange) {
    const std::vector<double> e{1.0, 2.0};
    EXPECT_THROW(sigma_j(e, 3), ParameterError);
    EXPECT_THROW(sigma_j(e, -1), ParameterError);
}

TEST(RadialEigs, Quadratic) {
    const double c = 0.3;
    const double r = 0.8;
    const auto e = radial_hessian_eigs(2 * c * r, 2 * c, r, 4);
    ASSERT_EQ(e.size(), 4u);
    for (double x : e) EXPECT_NEAR(x, 2 * c, 1e-15);
    EXPECT_THROW(radial_hessian_eigs(1.0, 1.0, 0.0, 3), ParameterError);
}

TEST(RadialEigs, TorsionConstantGivesOne) {
    for (int n = 2; n <= 7; ++n) {
        for (int k = 1; k <= n; ++k) {
            const ProblemParams p = make_params(n, k);
            const double c = 0.5 * std::pow(n * p.c_nk, -1.0 / k);
            const auto e = radial_hessian_eigs(2 * c * 0.4, 2 * c, 0.4, n);
            EXPECT_NEAR(sigma_j(e, k), 1.0, 1e-13);
        }
    }
}

TEST(RadialEigs, TraceIsLaplacian) {
    const double up = -0.4, upp = 1.3, r = 0.6;
    for (int n = 2; n <= 6; ++n) {
        EXPECT_NEAR(radial_sk_pointwise(up, upp, r, n, 1), upp + (n - 1) * up / r, 1e-14);
    }
}

// The divergence form c r^{1-n} (r^{n-k} (u')^k)' expanded by the product rule
// against the eigenvalue form, with analytic derivatives of u = r^4 + r^2.
TEST(RadialEigs, DivergenceFormAgrees) {
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= n; ++k) {
            const ProblemParams p = make_params(n, k);
            for (double r : {0.1, 0.5, 0.9, 1.7}) {
                const double up = 4 * r * r * r + 2 * r;
                const double upp = 12 * r * r + 2;
                const double div = p.c_nk * std::pow(r, 1 - n) *
                                   ((n - k) * std::pow(r, n - k - 1) * std::pow(up, k) +
                                    std::pow(r, n - k) * k * std::pow(up, k - 1) * upp);
                const double eig = radial_sk_pointwise(up, upp, r, n, k);
                EXPECT_NEAR(eig, div, 1e-12 * std::abs(div));
            }
        }
    }
}

TEST(Grid, Nodes) {
    const RadialGrid g(2.0, 8);
    EXPECT_EQ(g.node_count(), 9);
    EXPECT_DOUBLE_EQ(g.dr(), 0.25);
    EXPECT_EQ(g.node(0), 0.0);
    EXPECT_EQ(g.node(8), 2.0);
    for (int i = 1; i <= 8; ++i) EXPECT_GT(g.node(i), g.node(i - 1));
    EXPECT_THROW(RadialGrid(0.0, 8), ParameterError);
    EXPECT_THROW(RadialGrid(1.0, 0), ParameterError);
}

TEST(Grid, ProfileValidation) {
    const RadialGrid g(1.0, 4);
    EXPECT_THROW(RadialProfile(g, std::vector<double>(4, 0.0)), ParameterError);
    EXPECT_THROW(RadialProfile(g, {0.0, 1.0, NAN, 0.0, 0.0}), ConsistencyError);
    const RadialProfile p = RadialProfile::sample(g, [](double r) { return r * r - 1.0; });
    EXPECT_DOUBLE_EQ(p.sup_norm(), 1.0);
    EXPECT_DOUBLE_EQ(p.scaled(2.0)[0], -2.0);
    EXPECT_DOUBLE_EQ(max_abs_difference(p, p.scaled(2.0)), 1.0);
}

TEST(Admissibility, TorsionAdmissibleEveryK) {
    const RadialGrid g(1.0, 64);
    for (int k = 1; k <= 5; ++k) {
        const ProblemParams p = make_params(5, k);
        const RadialProfile e = RadialProfile::sample(g, [](double r) { return 0.4 * (r * r - 1.0); });
        EXPECT_TRUE(check_k_admissible_radial(e, p).admissible) << k;
    }
}

TEST(Admissibility, FlippedFailsFirstOrder) {
    const RadialGrid g(1.0, 64);
    const ProblemParams p = make_params(3, 2);
    const RadialProfile e = RadialProfile::sample(g, [](double r) { return 0.4 * (1.0 - r * r); });
    const AdmissibilityReport rep = check_k_admissible_radial(e, p);
    EXPECT_FALSE(rep.admissible);
    ASSERT_TRUE(rep.node.has_value());
    EXPECT_EQ(*rep.node, 0);
    EXPECT_EQ(*rep.order, 1);
    EXPECT_LT(rep.value, 0.0);
}

TEST(Admissibility, SecondOrderViolation) {
    // u = log((r + 0.1)/1.1): u''/(u'/r) = -r/(r + 0.1), so sigma_1 > 0 everywhere
    // while sigma_2 = q (2u'' + q) turns negative once r > 0.1 (n = 3, k = 2).
    const RadialGrid g(1.0, 200);
    const ProblemParams p = make_params(3, 2);
    const RadialProfile u = RadialProfile::sample(g, [](double r) { return std::log((r + 0.1) / 1.1); });
    const AdmissibilityReport rep = check_k_admissible_radial(u, p);
    EXPECT_FALSE(rep.admissible);
    EXPECT_EQ(*rep.order, 2);
}
