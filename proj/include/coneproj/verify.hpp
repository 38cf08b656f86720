#pragma once

#include "coneproj/exact.hpp"
#include "coneproj/simplicial_cone.hpp"

namespace coneproj {

/// Moreau decomposition certificate for a candidate projection p of x:
/// p must lie in K, x - p in K°, and the two must be orthogonal.
struct Certificate {
    double cone_residual = 0.0;           ///< max_j u_j . p
    double polar_residual = 0.0;          ///< max_i e_i . (x - p)
    double orthogonality_residual = 0.0;  ///< |p . (x - p)|
    bool passed = false;
};

/// Evaluate the certificate. passed requires cone_residual <= tol,
/// polar_residual <= tol and orthogonality_residual <= tol * (1 + |x|^2).
/// By the decomposition theorem this certifies p = P_K x.
Certificate moreau_check(const SimplicialCone& cone, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& p, double tol);

/// The index set I whose sector cone{e_i, u_j : i in I, j in I^c}
/// contains x; delegates to exact_project so there is a single
/// enumeration code path.
IndexSet classify_sector(const SimplicialCone& cone, const Eigen::VectorXd& x,
                         double tol, int max_dim_guard = kDefaultDimGuard);

} // namespace coneproj
