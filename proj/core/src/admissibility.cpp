#include "khess/admissibility.hpp"

#include <cmath>

#include "khess/errors.hpp"
#include "khess/symmetric.hpp"

namespace khess {

AdmissibilityReport check_k_admissible_radial(const RadialProfile& profile, const ProblemParams& params,
                                              double tol) {
    const RadialGrid& g = profile.grid();
    if (g.node_count() < 3) throw ParameterError("check_k_admissible_radial: need at least 3 nodes");
    const double h = g.dr();
    const double scale = profile.sup_norm() / (g.radius() * g.radius());
    AdmissibilityReport report;
    std::vector<double> eigs(static_cast<std::size_t>(params.n));
    for (int i = 0; i < g.cells(); ++i) {
        if (i == 0) {
            std::fill(eigs.begin(), eigs.end(), 2.0 * (profile[1] - profile[0]) / (h * h));
        } else {
            const double up = (profile[i + 1] - profile[i - 1]) / (2.0 * h);
            const double upp = (profile[i + 1] - 2.0 * profile[i] + profile[i - 1]) / (h * h);
            eigs = radial_hessian_eigs(up, upp, g.node(i), params.n);
        }
        for (int j = 1; j <= params.k; ++j) {
            const double s = sigma_j(eigs, j);
            if (s < -tol * std::pow(scale, j)) {
                report.admissible = false;
                report.node = i;
                report.order = j;
                report.value = s;
                return report;
            }
        }
    }
    return report;
}

}  // namespace khess
