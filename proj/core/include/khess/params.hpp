#pragma once

#include <cstdint>
#include <optional>

namespace khess {

/// Exact binomial coefficient for 0 <= k <= n <= 60. Throws ParameterError outside that range.
std::uint64_t binomial(int n, int k);

/// Volume of the unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

/// Dimension, Hessian order and the derived constants shared by every module.
///
/// c_nk = binom(n,k)/n is the radial constant of the k-Hessian,
/// alpha = n/(n(k-1)+2k) and beta = 1/(n(k-1)+2k) are the similarity exponents,
/// gamma = ((k-1)/(2k)) (beta/c_nk)^{1/k} is the self-similar profile constant
/// (absent for k = 1, where the profile is Gaussian).
struct ProblemParams {
    int n = 2;
    int k = 1;
    double c_nk = 1.0;
    double alpha = 1.0;
    double beta = 0.5;
    std::optional<double> gamma;

    /// binom(n, k) as a double, the origin-limit prefactor of S_k.
    double binom_nk() const;
    /// gamma for k >= 2; throws ParameterError for k = 1.
    double gamma_value() const;
};

/// Requires n >= 2 and 1 <= k <= n.
ProblemParams make_params(int n, int k);

}  // namespace khess
