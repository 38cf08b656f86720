#include "coneproj/exact.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace coneproj {

namespace {

void check_guard(const SimplicialCone& cone, int max_dim_guard) {
    const int limit = std::min(max_dim_guard, kHardDimCap);
    if (cone.dim() > limit) {
        throw DimensionGuard("exact method refused: dimension " + std::to_string(cone.dim()) +
                             " exceeds guard " + std::to_string(limit) +
                             " (the search solves 2^n linear systems)");
    }
}

void check_input(const SimplicialCone& cone, const Eigen::VectorXd& x) {
    if (x.size() != cone.dim()) {
        throw DimensionMismatch("exact_project: point has dimension " +
                                std::to_string(x.size()) + ", cone has " +
                                std::to_string(cone.dim()));
    }
    if (!x.allFinite()) {
        throw NonFinite("exact_project: point contains NaN or Inf");
    }
}

// Solves the alpha system for I; when feasible, solves beta. Returns the
// coefficients iff both clear the acceptance threshold >= -tol.
std::optional<MixedCoefficients> try_sector(const SimplicialCone& cone, const IndexSet& I,
                                            const Eigen::VectorXd& x, double tol) {
    MixedCoefficients coeffs;
    coeffs.set = I;
    coeffs.alpha = solve_alpha(cone, I, x);
    if ((coeffs.alpha.array() < -tol).any()) {
        return std::nullopt;
    }
    coeffs.beta = solve_beta(cone, I, x);
    if ((coeffs.beta.array() < -tol).any()) {
        return std::nullopt;
    }
    return coeffs;
}

ExactResult finish(const SimplicialCone& cone, const MixedCoefficients& coeffs,
                   std::int64_t tried) {
    ExactResult result;
    result.sector = coeffs.set;
    result.subsets_tried = tried;
    result.projection = Eigen::VectorXd::Zero(cone.dim());
    result.polar_projection = Eigen::VectorXd::Zero(cone.dim());
    const auto ms = coeffs.set.members();
    for (std::size_t k = 0; k < ms.size(); ++k) {
        const double a = std::max(coeffs.alpha(static_cast<Eigen::Index>(k)), 0.0);
        result.projection += a * cone.generators().col(ms[k] - 1);
    }
    const auto cs = coeffs.set.complement_members();
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const double b = std::max(coeffs.beta(static_cast<Eigen::Index>(k)), 0.0);
        result.polar_projection += b * cone.polar_generators().col(cs[k] - 1);
    }
    return result;
}

} // namespace

ExactResult exact_project(const SimplicialCone& cone, const Eigen::VectorXd& x,
                          double tol, int max_dim_guard) {
    check_guard(cone, max_dim_guard);
    check_input(cone, x);
    const int n = cone.dim();
    const std::uint64_t total = 1ULL << n;
    std::int64_t tried = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const IndexSet I = IndexSet::from_mask(n, mask);
        ++tried;
        if (auto hit = try_sector(cone, I, x, tol)) {
            return finish(cone, *hit, tried);
        }
    }
    throw NoSectorFound("no subset passed the sign tests after " + std::to_string(tried) +
                        " candidates; tolerance " + std::to_string(tol));
}

ExactResult exact_project_subdual(const SimplicialCone& cone, const Eigen::VectorXd& x,
                                  double tol, int max_dim_guard) {
    if (!cone.subdual()) {
        throw NotSubdual("exact_project_subdual requires a subdual cone "
                         "(all pairwise generator inner products >= 0)");
    }
    check_guard(cone, max_dim_guard);
    check_input(cone, x);
    const int n = cone.dim();

    // Candidate pool from the pruning rule: x.e_l < 0 rules index l out.
    const Eigen::VectorXd etx = cone.generators().transpose() * x;
    std::vector<int> pool;
    for (int i = 1; i <= n; ++i) {
        if (etx(i - 1) >= -tol) {
            pool.push_back(i);
        }
    }

    // Submasks of the pool, visited in increasing expanded bit-pattern
    // order (a subsequence of the full enumeration).
    const int p = static_cast<int>(pool.size());
    const std::uint64_t total = 1ULL << p;
    std::int64_t tried = 0;
    for (std::uint64_t packed = 0; packed < total; ++packed) {
        IndexSet I(n);
        for (int b = 0; b < p; ++b) {
            if ((packed >> b) & 1ULL) {
                I.insert(pool[static_cast<std::size_t>(b)]);
            }
        }
        ++tried;
        if (auto hit = try_sector(cone, I, x, tol)) {
            return finish(cone, *hit, tried);
        }
    }
    throw NoSectorFound("subdual search exhausted " + std::to_string(tried) +
                        " candidates without a feasible sector");
}

std::int64_t count_strict_sectors(const SimplicialCone& cone, const Eigen::VectorXd& x,
                                  double tol, int max_dim_guard) {
    check_guard(cone, max_dim_guard);
    check_input(cone, x);
    const int n = cone.dim();
    const std::uint64_t total = 1ULL << n;
    std::int64_t hits = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const IndexSet I = IndexSet::from_mask(n, mask);
        const Eigen::VectorXd alpha = solve_alpha(cone, I, x);
        if ((alpha.array() < tol).any()) {
            continue;
        }
        const Eigen::VectorXd beta = solve_beta(cone, I, x);
        if ((beta.array() < tol).any()) {
            continue;
        }
        ++hits;
    }
    return hits;
}

} // namespace coneproj
