#include "coneproj/verify.hpp"

#include <cmath>
#include <string>

namespace coneproj {

Certificate moreau_check(const SimplicialCone& cone, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& p, double tol) {
    if (x.size() != cone.dim() || p.size() != cone.dim()) {
        throw DimensionMismatch("moreau_check: expected vectors of dimension " +
                                std::to_string(cone.dim()));
    }
    if (!x.allFinite() || !p.allFinite()) {
        throw NonFinite("moreau_check: input contains NaN or Inf");
    }
    Certificate cert;
    const Eigen::VectorXd residual = x - p;
    cert.cone_residual = (cone.polar_generators().transpose() * p).maxCoeff();
    cert.polar_residual = (cone.generators().transpose() * residual).maxCoeff();
    cert.orthogonality_residual = std::abs(p.dot(residual));
    cert.passed = cert.cone_residual <= tol && cert.polar_residual <= tol &&
                  cert.orthogonality_residual <= tol * (1.0 + x.squaredNorm());
    return cert;
}

IndexSet classify_sector(const SimplicialCone& cone, const Eigen::VectorXd& x,
                         double tol, int max_dim_guard) {
    return exact_project(cone, x, tol, max_dim_guard).sector;
}

} // namespace coneproj
