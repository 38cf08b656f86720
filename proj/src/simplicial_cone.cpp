#include "coneproj/simplicial_cone.hpp"

#include <cmath>
#include <iostream>
#include <utility>

namespace coneproj {

double default_sign_tol(const Eigen::VectorXd& x) {
    return 1e-10 * (1.0 + x.norm());
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::InCone: return "InCone";
        case Membership::InPolar: return "InPolar";
        case Membership::Outside: return "Outside";
        case Membership::Zero: return "Zero";
    }
    return "?";
}

SimplicialCone::SimplicialCone(Eigen::MatrixXd e, Eigen::MatrixXd u, double tol, double rcond)
    : generators_(std::move(e)), polar_(std::move(u)), tol_(tol), rcond_(rcond) {
    gram_e_ = generators_.transpose() * generators_;
    gram_u_ = polar_.transpose() * polar_;
    subdual_ = (gram_e_.array() >= 0.0).all();
}

SimplicialCone SimplicialCone::build(const Eigen::MatrixXd& generators, double tol) {
    if (generators.rows() == 0 || generators.rows() != generators.cols()) {
        throw DimensionMismatch("generator matrix must be square and nonempty, got " +
                                std::to_string(generators.rows()) + "x" +
                                std::to_string(generators.cols()));
    }
    if (!generators.allFinite()) {
        throw NonFinite("generator matrix contains NaN or Inf");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("build tolerance must be positive");
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(generators);
    const double rcond = lu.rcond();
    if (!std::isfinite(rcond) || rcond < kRcondFloor) {
        throw SingularGenerators("generators not invertible to working precision "
                                 "(rcond estimate " + std::to_string(rcond) + ")");
    }

    const int n = static_cast<int>(generators.rows());
    Eigen::MatrixXd polar = -lu.inverse().transpose();

    // e_i . u_j must equal -delta_ij; a violated residual means the inverse
    // is too inaccurate to trust the cone.
    Eigen::MatrixXd residual = generators.transpose() * polar +
                               Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double scale = 1.0 + generators.col(i).norm() * polar.col(j).norm();
            if (!(std::abs(residual(i, j)) <= tol * scale)) {
                throw SingularGenerators("polar residual " +
                                         std::to_string(std::abs(residual(i, j))) +
                                         " exceeds tolerance at (" + std::to_string(i + 1) +
                                         "," + std::to_string(j + 1) + ")");
            }
        }
    }

    return SimplicialCone(generators, std::move(polar), tol, rcond);
}

Membership membership(const SimplicialCone& cone, const Eigen::VectorXd& x, double tol) {
    if (x.size() != cone.dim()) {
        throw DimensionMismatch("membership: point has dimension " +
                                std::to_string(x.size()) + ", cone has " +
                                std::to_string(cone.dim()));
    }
    if (!x.allFinite()) {
        throw NonFinite("membership: point contains NaN or Inf");
    }
    const bool in_polar = ((cone.generators().transpose() * x).array() <= tol).all();
    const bool in_cone = ((cone.polar_generators().transpose() * x).array() <= tol).all();
    if (in_polar && in_cone) {
        return Membership::Zero;
    }
    if (in_polar) {
        return Membership::InPolar;
    }
    if (in_cone) {
        return Membership::InCone;
    }
    return Membership::Outside;
}

double MixedCoefficients::alpha_of(int i) const {
    const auto m = set.members();
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == i) {
            return alpha(static_cast<Eigen::Index>(k));
        }
    }
    throw std::out_of_range("alpha_of: index " + std::to_string(i) + " not in " +
                            set.to_string());
}

double MixedCoefficients::beta_of(int j) const {
    const auto m = set.complement_members();
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == j) {
            return beta(static_cast<Eigen::Index>(k));
        }
    }
    throw std::out_of_range("beta_of: index " + std::to_string(j) + " not in complement of " +
                            set.to_string());
}

namespace {

// Solve the principal-submatrix Gram system G(sel,sel) y = rhs(sel).
// Gram matrices of independent vectors are SPD, so Cholesky first;
// if roundoff spoils it, retry with a pivoted LU before giving up.
Eigen::VectorXd gram_solve(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs_full,
                           const std::vector<int>& members_1based, const char* label) {
    const Eigen::Index k = static_cast<Eigen::Index>(members_1based.size());
    if (k == 0) {
        return Eigen::VectorXd();
    }
    Eigen::MatrixXd sub(k, k);
    Eigen::VectorXd rhs(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        rhs(r) = rhs_full(members_1based[static_cast<std::size_t>(r)] - 1);
        for (Eigen::Index c = 0; c < k; ++c) {
            sub(r, c) = gram(members_1based[static_cast<std::size_t>(r)] - 1,
                             members_1based[static_cast<std::size_t>(c)] - 1);
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sub);
    if (llt.info() == Eigen::Success) {
        return llt.solve(rhs);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sub);
    const double rcond = lu.rcond();
    if (!std::isfinite(rcond) || rcond < kRcondFloor) {
        throw SolveFailure(std::string(label) +
                           ": Gram submatrix numerically singular (rcond " +
                           std::to_string(rcond) + ")");
    }
    std::cerr << "coneproj: warning: SPD factorization failed for " << label
              << " submatrix of size " << k << ", fell back to LU\n";
    return lu.solve(rhs);
}

void check_point(const SimplicialCone& cone, const Eigen::VectorXd& x, const char* label) {
    if (x.size() != cone.dim()) {
        throw DimensionMismatch(std::string(label) + ": point has dimension " +
                                std::to_string(x.size()) + ", cone has " +
                                std::to_string(cone.dim()));
    }
    if (!x.allFinite()) {
        throw NonFinite(std::string(label) + ": point contains NaN or Inf");
    }
}

void check_set(const SimplicialCone& cone, const IndexSet& I, const char* label) {
    if (I.dim() != cone.dim()) {
        throw DimensionMismatch(std::string(label) + ": index set width " +
                                std::to_string(I.dim()) + ", cone dimension " +
                                std::to_string(cone.dim()));
    }
}

} // namespace

Eigen::VectorXd solve_alpha(const SimplicialCone& cone, const IndexSet& I,
                            const Eigen::VectorXd& x) {
    check_point(cone, x, "solve_alpha");
    check_set(cone, I, "solve_alpha");
    const Eigen::VectorXd etx = cone.generators().transpose() * x;
    return gram_solve(cone.gram_generators(), etx, I.members(), "solve_alpha");
}

Eigen::VectorXd solve_beta(const SimplicialCone& cone, const IndexSet& I,
                           const Eigen::VectorXd& x) {
    check_point(cone, x, "solve_beta");
    check_set(cone, I, "solve_beta");
    const Eigen::VectorXd utx = cone.polar_generators().transpose() * x;
    return gram_solve(cone.gram_polar(), utx, I.complement_members(), "solve_beta");
}

MixedCoefficients decompose(const SimplicialCone& cone, const IndexSet& I,
                            const Eigen::VectorXd& x) {
    MixedCoefficients out;
    out.set = I;
    out.alpha = solve_alpha(cone, I, x);
    out.beta = solve_beta(cone, I, x);
    return out;
}

Eigen::VectorXd reconstruct(const SimplicialCone& cone, const MixedCoefficients& coeffs) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(cone.dim());
    const auto ms = coeffs.set.members();
    for (std::size_t k = 0; k < ms.size(); ++k) {
        x += coeffs.alpha(static_cast<Eigen::Index>(k)) * cone.generators().col(ms[k] - 1);
    }
    const auto cs = coeffs.set.complement_members();
    for (std::size_t k = 0; k < cs.size(); ++k) {
        x += coeffs.beta(static_cast<Eigen::Index>(k)) * cone.polar_generators().col(cs[k] - 1);
    }
    return x;
}

} // namespace coneproj
