#include "khess/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "khess/errors.hpp"

namespace khess {

std::uint64_t binomial(int n, int k) {
    if (n < 0 || n > 60 || k < 0 || k > n) {
        throw ParameterError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                             ") outside 0 <= k <= n <= 60");
    }
    k = std::min(k, n - k);
    // binom(n, i) * (n - i) stays below 2^62 for n <= 60, so the running product is exact.
    std::uint64_t result = 1;
    for (int i = 0; i < k; ++i) {
        result = result * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    }
    return result;
}

double unit_ball_volume(int n) {
    if (n < 1) throw ParameterError("unit_ball_volume: n must be positive");
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double ProblemParams::binom_nk() const { return static_cast<double>(binomial(n, k)); }

double ProblemParams::gamma_value() const {
    if (!gamma) throw ParameterError("gamma is undefined for k = 1 (Gaussian profile)");
    return *gamma;
}

ProblemParams make_params(int n, int k) {
    if (n < 2) throw ParameterError("dimension n must be >= 2, got " + std::to_string(n));
    if (k < 1 || k > n) {
        throw ParameterError("Hessian order k must satisfy 1 <= k <= n, got k = " + std::to_string(k) +
                             ", n = " + std::to_string(n));
    }
    ProblemParams p;
    p.n = n;
    p.k = k;
    p.c_nk = static_cast<double>(binomial(n, k)) / n;
    const int denom = n * (k - 1) + 2 * k;
    p.beta = 1.0 / denom;
    p.alpha = static_cast<double>(n) / denom;
    if (k > 1) {
        p.gamma = (k - 1.0) / (2.0 * k) * std::pow(p.beta / p.c_nk, 1.0 / k);
    }
    return p;
}

}  // namespace khess
