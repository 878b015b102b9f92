#include "khess/symmetric.hpp"

#include <string>

#include "khess/errors.hpp"
#include "khess/params.hpp"

namespace khess {

double sigma_j(std::span<const double> eigs, int j) {
    const int n = static_cast<int>(eigs.size());
    if (j < 0 || j > n) {
        throw ParameterError("sigma_j: index " + std::to_string(j) + " outside 0.." + std::to_string(n));
    }
    std::vector<double> e(static_cast<std::size_t>(j) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i) {
        const double lam = eigs[static_cast<std::size_t>(i)];
        for (int q = std::min(j, i + 1); q >= 1; --q) {
            e[static_cast<std::size_t>(q)] += lam * e[static_cast<std::size_t>(q - 1)];
        }
    }
    return e[static_cast<std::size_t>(j)];
}

std::vector<double> radial_hessian_eigs(double u_prime, double u_second, double r, int n) {
    if (!(r > 0.0)) throw ParameterError("radial_hessian_eigs: r must be > 0 (use the origin limit)");
    if (n < 1) throw ParameterError("radial_hessian_eigs: n must be positive");
    std::vector<double> eigs(static_cast<std::size_t>(n), u_prime / r);
    eigs[0] = u_second;
    return eigs;
}

double radial_sk_pointwise(double u_prime, double u_second, double r, int n, int k) {
    const double q = u_prime / r;
    const double a = static_cast<double>(binomial(n - 1, k - 1));
    const double b = k <= n - 1 ? static_cast<double>(binomial(n - 1, k)) : 0.0;
    return a * u_second * ipow(q, k - 1) + b * ipow(q, k);
}

}  // namespace khess
