#pragma once

#include <optional>

#include "khess/grid.hpp"
#include "khess/params.hpp"

namespace khess {

struct AdmissibilityReport {
    bool admissible = true;
    /// First (node, order) pair where sigma_j fell below -tol, scanning nodes outward.
    std::optional<int> node;
    std::optional<int> order;
    double value = 0.0;
};

/// Tolerance scale used when the caller passes none: 1e-10 * (sup|u| / R^2)^j for sigma_j.
inline constexpr double kDefaultAdmissibilityTol = 1e-10;

/// Checks sigma_j(D^2 u) > -tol_j for j = 1..k at nodes 0..m-1, with u', u''
/// from centred differences and the symmetric limit 2(u_1 - u_0)/dr^2 at the origin.
/// `tol` is relative: tol_j = tol * (sup|u| / R^2)^j.
AdmissibilityReport check_k_admissible_radial(const RadialProfile& profile,
                                              const ProblemParams& params,
                                              double tol = kDefaultAdmissibilityTol);

}  // namespace khess
