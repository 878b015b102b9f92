#include "khess/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "khess/errors.hpp"
#include "khess/params.hpp"
#include "khess/symmetric.hpp"

namespace khess {

GaussRule gauss_legendre(int order) {
    if (order < 1) throw ParameterError("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= order; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
    return rule;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        const GaussRule& rule) {
    if (panels < 1) throw ParameterError("integrate_panels: need at least one panel");
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        double s = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) s += rule.weights[q] * f(mid + 0.5 * width * rule.nodes[q]);
        total += 0.5 * width * s;
    }
    return total;
}

double integrate_to_edge(const std::function<double(double)>& f, double edge, int points, int order) {
    if (!(edge > 0.0)) throw ParameterError("integrate_to_edge: edge must be > 0");
    const GaussRule rule = gauss_legendre(order);
    const int budget = std::max(points / order, 4);
    // Half the panels go to the uniform bulk, half to graded panels toward the edge.
    const int graded = std::min(budget / 2, 60);
    const int uniform = budget - graded;
    double total = integrate_panels(f, 0.0, 0.5 * edge, uniform, rule);
    double lo = 0.5 * edge;
    double width = 0.25 * edge;
    for (int p = 0; p < graded; ++p) {
        const double hi = p + 1 == graded ? edge : lo + width;
        total += integrate_panels(f, lo, hi, 1, rule);
        lo = hi;
        width *= 0.5;
    }
    return total;
}

double radial_mass(const RadialProfile& profile, int n, RadialRule rule) {
    const RadialGrid& g = profile.grid();
    const double sphere = n * unit_ball_volume(n);
    double total = 0.0;
    if (rule == RadialRule::trapezoid) {
        for (int i = 0; i < g.cells(); ++i) {
            const double a = std::abs(profile[i]) * ipow(g.node(i), n - 1);
            const double b = std::abs(profile[i + 1]) * ipow(g.node(i + 1), n - 1);
            total += 0.5 * (a + b) * g.dr();
        }
        return sphere * total;
    }
    // Cell measures V_i = (r_{i+1/2}^n - r_{i-1/2}^n)/n plus the half cell at R.
    double prev = 0.0;
    for (int i = 0; i < g.node_count(); ++i) {
        const double hi = i == g.cells() ? g.radius() : g.face(i);
        const double cur = ipow(hi, n) / n;
        total += std::abs(profile[i]) * (cur - prev);
        prev = cur;
    }
    return sphere * total;
}

}  // namespace khess
