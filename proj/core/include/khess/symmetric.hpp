#pragma once

#include <span>
#include <vector>

namespace khess {

/// j-th elementary symmetric function of `eigs` (sum over j-subsets of products),
/// evaluated with the one-pass recurrence e_j <- e_j + lambda * e_{j-1}.
/// j = 0 returns 1. Throws ParameterError unless 0 <= j <= eigs.size().
double sigma_j(std::span<const double> eigs, int j);

/// Eigenvalues of the Hessian of a radial function at radius r > 0:
/// u'' once and u'/r with multiplicity n-1.
std::vector<double> radial_hessian_eigs(double u_prime, double u_second, double r, int n);

/// sigma_k of the radial eigenvalues in closed form,
/// binom(n-1,k-1) u'' (u'/r)^{k-1} + binom(n-1,k) (u'/r)^k.
double radial_sk_pointwise(double u_prime, double u_second, double r, int n, int k);

/// x^k for integer k by repeated multiplication; sign carried through for odd k.
inline double ipow(double x, int k) {
    double result = 1.0;
    for (int i = 0; i < (k < 0 ? -k : k); ++i) result *= x;
    return k < 0 ? 1.0 / result : result;
}

}  // namespace khess
