#pragma once

#include <cstdint>

#include "coneproj/simplicial_cone.hpp"

namespace coneproj {

/// Default cap on the exact method's dimension (2^n subsets get enumerated).
inline constexpr int kDefaultDimGuard = 15;

/// Absolute refusal threshold; the guard cannot be raised past this.
inline constexpr int kHardDimCap = 25;

/// Output of the exact combinatorial method.
struct ExactResult {
    Eigen::VectorXd projection;        ///< P_K x
    Eigen::VectorXd polar_projection;  ///< P_K° x
    IndexSet sector;                   ///< the index set I whose mixed basis carries x
    std::int64_t subsets_tried = 0;    ///< candidate subsets whose alpha system was solved
};

/// Projection by exhaustive sector search: subsets I of {1..n} are
/// enumerated in increasing bit-pattern order; for each, the alpha system
/// is solved, and when all alpha_i >= -tol the beta system decides
/// acceptance (all beta_j >= -tol). Exactly one sector passes for generic
/// x; boundary ties resolve to the first subset in enumeration order,
/// where only the projection vector (not the sector label) is unique.
/// Coefficients in [-tol, 0) are clamped to zero in the returned vectors.
///
/// Throws DimensionGuard when cone.dim() exceeds min(max_dim_guard, 25),
/// and NoSectorFound if enumeration exhausts (tolerance mis-tuning).
ExactResult exact_project(const SimplicialCone& cone, const Eigen::VectorXd& x,
                          double tol, int max_dim_guard = kDefaultDimGuard);

/// Same contract as exact_project, but candidate subsets are restricted to
/// subsets of { i : x.e_i >= -tol }, which is sound when the cone is
/// subdual (all pairwise generator inner products nonnegative).
/// Throws NotSubdual when the flag does not hold.
ExactResult exact_project_subdual(const SimplicialCone& cone, const Eigen::VectorXd& x,
                                  double tol, int max_dim_guard = kDefaultDimGuard);

/// Diagnostic sweep: enumerate every subset (no early exit) and count those
/// whose alpha AND beta clear the strict threshold +tol. Generic points
/// have exactly one such sector.
std::int64_t count_strict_sectors(const SimplicialCone& cone, const Eigen::VectorXd& x,
                                  double tol, int max_dim_guard = kDefaultDimGuard);

} // namespace coneproj
