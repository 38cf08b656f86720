#pragma once

#include <Eigen/Dense>

#include "coneproj/errors.hpp"
#include "coneproj/index_set.hpp"

namespace coneproj {

/// Default construction tolerance for the polar-matrix residual test.
inline constexpr double kDefaultBuildTol = 1e-8;

/// Cones whose generator matrix has a reciprocal condition estimate below
/// this are rejected as numerically singular.
inline constexpr double kRcondFloor = 1e-12;

/// Default tolerance for sign and membership tests: 1e-10 * (1 + |x|).
double default_sign_tol(const Eigen::VectorXd& x);

/// Where a point sits relative to the cone K and its polar K°.
enum class Membership { InCone, InPolar, Outside, Zero };

const char* to_string(Membership m);

/// A simplicial cone K = { E v : v >= 0 } spanned by the n linearly
/// independent columns of an n-by-n matrix E, together with its polar
/// K° = { U w : w >= 0 }, U = -(E^-1)^T. The generator/polar pairing
/// satisfies e_i . u_j = -delta_ij, which is what makes the mixed-basis
/// Gram systems below exact.
///
/// Instances are immutable after construction and safe to share across
/// threads; every free function in this header is a pure function.
class SimplicialCone {
public:
    /// Validates invertibility (reciprocal condition estimate >= kRcondFloor)
    /// and the polar residual |(E^T U + I)_ij| <= tol * (1 + |e_i||u_j|).
    /// Throws NonFinite or SingularGenerators.
    static SimplicialCone build(const Eigen::MatrixXd& generators,
                                double tol = kDefaultBuildTol);

    int dim() const { return static_cast<int>(generators_.cols()); }
    const Eigen::MatrixXd& generators() const { return generators_; }
    const Eigen::MatrixXd& polar_generators() const { return polar_; }
    /// E^T E, the matrix behind the alpha systems.
    const Eigen::MatrixXd& gram_generators() const { return gram_e_; }
    /// U^T U, the matrix behind the beta systems.
    const Eigen::MatrixXd& gram_polar() const { return gram_u_; }
    /// True iff every entry of E^T E is >= 0 (K contained in its dual).
    bool subdual() const { return subdual_; }
    /// The tolerance the cone was built with.
    double build_tolerance() const { return tol_; }
    /// Reciprocal condition estimate of E from construction; the Gram
    /// systems lose up to its square in precision.
    double rcond() const { return rcond_; }

    /// Column i (1-based) of E.
    Eigen::VectorXd generator(int i) const { return generators_.col(i - 1); }
    /// Column j (1-based) of U.
    Eigen::VectorXd polar_generator(int j) const { return polar_.col(j - 1); }

private:
    SimplicialCone(Eigen::MatrixXd e, Eigen::MatrixXd u, double tol, double rcond);

    Eigen::MatrixXd generators_;
    Eigen::MatrixXd polar_;
    Eigen::MatrixXd gram_e_;
    Eigen::MatrixXd gram_u_;
    bool subdual_ = false;
    double tol_ = kDefaultBuildTol;
    double rcond_ = 1.0;
};

/// Classify x against K and K°: InPolar iff e_i . x <= tol for all i,
/// InCone iff u_j . x <= tol for all j, Zero if both, Outside otherwise.
Membership membership(const SimplicialCone& cone, const Eigen::VectorXd& x,
                      double tol);

/// Coefficients of x in the mixed basis {e_i : i in I} u {u_j : j in I^c}.
/// alpha is aligned with set.members(), beta with set.complement_members().
struct MixedCoefficients {
    IndexSet set;
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;

    /// Coefficient of e_i; i must be a member of set.
    double alpha_of(int i) const;
    /// Coefficient of u_j; j must be outside set.
    double beta_of(int j) const;
};

/// Solve x.e_l = sum_{i in I} alpha_i e_i.e_l over l in I (the principal
/// submatrix of E^T E indexed by I). Returns the coefficients in
/// I.members() order; empty I yields an empty vector.
Eigen::VectorXd solve_alpha(const SimplicialCone& cone, const IndexSet& I,
                            const Eigen::VectorXd& x);

/// Solve x.u_k = sum_{j in I^c} beta_j u_j.u_k over k in I^c (principal
/// submatrix of U^T U indexed by the complement of I).
Eigen::VectorXd solve_beta(const SimplicialCone& cone, const IndexSet& I,
                           const Eigen::VectorXd& x);

/// Both solves together. The mutual orthogonality e_i . u_j = 0 for
/// i in I, j in I^c makes the two Gram systems exact, so reconstruct()
/// recovers x up to roundoff.
MixedCoefficients decompose(const SimplicialCone& cone, const IndexSet& I,
                            const Eigen::VectorXd& x);

/// sum alpha_i e_i + sum beta_j u_j.
Eigen::VectorXd reconstruct(const SimplicialCone& cone,
                            const MixedCoefficients& coeffs);

} // namespace coneproj
