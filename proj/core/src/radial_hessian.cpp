#include "khess/radial_hessian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "khess/errors.hpp"
#include "khess/symmetric.hpp"

namespace khess {

namespace {

// (a^n - b^n)/n written as (a - b)/n * sum_j a^{n-1-j} b^j, free of cancellation.
double shell_measure(double a, double b, int n) {
    double sum = 0.0;
    double ap = ipow(a, n - 1);
    double bp = 1.0;
    for (int j = 0; j < n; ++j) {
        sum += ap * bp;
        ap = a != 0.0 ? ap / a : 0.0;
        bp *= b;
    }
    return (a - b) * sum / n;
}

}  // namespace

RadialSkOperator::RadialSkOperator(const RadialGrid& grid, const ProblemParams& params)
    : grid_(grid), params_(params) {
    const int m = grid.cells();
    const int n = params.n;
    const int k = params.k;
    face_weight_.resize(static_cast<std::size_t>(m));
    cell_measure_.resize(static_cast<std::size_t>(m));
    inv_cell_.resize(static_cast<std::size_t>(m));
    for (int f = 0; f < m; ++f) face_weight_[static_cast<std::size_t>(f)] = ipow(grid.face(f), n - k);
    cell_measure_[0] = ipow(grid.face(0), n) / n;
    for (int i = 1; i < m; ++i) {
        // Upper face of the cell at node i sits at (i + 1/2) dr, lower at (i - 1/2) dr.
        cell_measure_[static_cast<std::size_t>(i)] = shell_measure(grid.face(i), grid.face(i - 1), n);
    }
    for (int i = 0; i < m; ++i) {
        inv_cell_[static_cast<std::size_t>(i)] = params.c_nk / cell_measure_[static_cast<std::size_t>(i)];
    }
}

double RadialSkOperator::evaluate(std::span<const double> u, std::span<double> out) const {
    const int m = grid_.cells();
    const int k = params_.k;
    const double inv_dr = 1.0 / grid_.dr();
    double max_rate = 0.0;
    double flux_lo = 0.0;
    double diff_lo = 0.0;
    for (int i = 0; i < m; ++i) {
        const auto fi = static_cast<std::size_t>(i);
        const double slope = (u[fi + 1] - u[fi]) * inv_dr;
        const double pk1 = ipow(slope, k - 1);
        const double flux_hi = face_weight_[fi] * pk1 * slope;
        const double diff_hi = k * face_weight_[fi] * std::abs(pk1);
        out[fi] = inv_cell_[fi] * (flux_hi - flux_lo);
        max_rate = std::max(max_rate, inv_cell_[fi] * (diff_lo + diff_hi) * inv_dr);
        flux_lo = flux_hi;
        diff_lo = diff_hi;
    }
    return max_rate;
}

FluxField compute_fluxes(const RadialProfile& profile, const ProblemParams& params) {
    const RadialGrid& g = profile.grid();
    FluxField field{g, std::vector<double>(static_cast<std::size_t>(g.cells()))};
    for (int f = 0; f < g.cells(); ++f) {
        const double slope = (profile[f + 1] - profile[f]) / g.dr();
        field.flux[static_cast<std::size_t>(f)] = ipow(g.face(f), params.n - params.k) * ipow(slope, params.k);
    }
    return field;
}

RadialProfile apply_sk_radial(const RadialProfile& profile, const ProblemParams& params) {
    const RadialGrid& g = profile.grid();
    const int m = g.cells();
    if (m < 4) throw ParameterError("apply_sk_radial: grid needs m >= 4 cells, got " + std::to_string(m));
    RadialSkOperator op(g, params);
    std::vector<double> out(static_cast<std::size_t>(m) + 1);
    op.evaluate(profile.values(), out);
    const auto mm = static_cast<std::size_t>(m);
    out[mm] = 2.0 * out[mm - 1] - out[mm - 2];
    return RadialProfile(g, std::move(out));
}

double stationary_residual(const RadialProfile& profile, const ProblemParams& params) {
    if (params.k < 2) throw ParameterError("stationary_residual: the stationary problem needs k >= 2");
    const RadialProfile sk = apply_sk_radial(profile, params);
    const double inv = 1.0 / (params.k - 1);
    double res = 0.0;
    for (int i = 0; i < profile.grid().cells(); ++i) res = std::max(res, std::abs(sk[i] + profile[i] * inv));
    return res;
}

}  // namespace khess
