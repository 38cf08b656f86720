#include "coneproj/heuristic.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

#include "coneproj/verify.hpp"

namespace coneproj {

const char* to_string(HeuristicStatus s) {
    switch (s) {
        case HeuristicStatus::Converged: return "Converged";
        case HeuristicStatus::LoopAborted: return "LoopAborted";
        case HeuristicStatus::IterationBudgetExhausted: return "IterationBudgetExhausted";
    }
    return "?";
}

IterationStep heuristic_iterate(const SimplicialCone& cone, const IndexSet& I,
                                const Eigen::VectorXd& x, double sign_tol) {
    IterationStep step;
    step.coeffs = decompose(cone, I, x);
    step.next_set = I;
    const auto ms = I.members();
    for (std::size_t k = 0; k < ms.size(); ++k) {
        if (step.coeffs.alpha(static_cast<Eigen::Index>(k)) < -sign_tol) {
            step.next_set.erase(ms[k]);
            ++step.swaps;
        }
    }
    const auto cs = I.complement_members();
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (step.coeffs.beta(static_cast<Eigen::Index>(k)) < -sign_tol) {
            step.next_set.insert(cs[k]);
            ++step.swaps;
        }
    }
    return step;
}

namespace {

// Uniform over all 2^n subsets; raw engine bits keep the draw portable.
IndexSet random_index_set(int n, std::mt19937_64& rng) {
    IndexSet s(n);
    std::uint64_t word = 0;
    int left = 0;
    for (int i = 1; i <= n; ++i) {
        if (left == 0) {
            word = rng();
            left = 64;
        }
        if (word & 1ULL) {
            s.insert(i);
        }
        word >>= 1;
        --left;
    }
    return s;
}

Eigen::VectorXd clamped_projection(const SimplicialCone& cone, const MixedCoefficients& coeffs) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(cone.dim());
    const auto ms = coeffs.set.members();
    for (std::size_t k = 0; k < ms.size(); ++k) {
        const double a = std::max(coeffs.alpha(static_cast<Eigen::Index>(k)), 0.0);
        p += a * cone.generators().col(ms[k] - 1);
    }
    return p;
}

Eigen::VectorXd clamped_polar_projection(const SimplicialCone& cone,
                                         const MixedCoefficients& coeffs) {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(cone.dim());
    const auto cs = coeffs.set.complement_members();
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const double b = std::max(coeffs.beta(static_cast<Eigen::Index>(k)), 0.0);
        q += b * cone.polar_generators().col(cs[k] - 1);
    }
    return q;
}

} // namespace

HeuristicResult heuristic_project(const SimplicialCone& cone, const Eigen::VectorXd& x,
                                  const HeuristicConfig& config) {
    const int n = cone.dim();
    if (x.size() != n) {
        throw DimensionMismatch("heuristic_project: point has dimension " +
                                std::to_string(x.size()) + ", cone has " + std::to_string(n));
    }
    if (!x.allFinite()) {
        throw NonFinite("heuristic_project: point contains NaN or Inf");
    }
    if (config.max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be >= 1");
    }
    const double sign_tol = config.sign_tol.value_or(default_sign_tol(x));
    if (sign_tol < 0.0) {
        throw std::invalid_argument("sign_tol must be nonnegative");
    }

    HeuristicResult result;

    // Shortcuts: the polar test runs first, so a point near the apex
    // (member of both bands) resolves to the zero projection.
    switch (membership(cone, x, sign_tol)) {
        case Membership::Zero:
        case Membership::InPolar:
            result.projection = Eigen::VectorXd::Zero(n);
            result.polar_projection = x;
            result.final_set = IndexSet(n);
            result.stats.shortcut = Membership::InPolar;
            result.status = HeuristicStatus::Converged;
            return result;
        case Membership::InCone:
            result.projection = x;
            result.polar_projection = Eigen::VectorXd::Zero(n);
            result.final_set = IndexSet::all(n);
            result.stats.shortcut = Membership::InCone;
            result.status = HeuristicStatus::Converged;
            return result;
        case Membership::Outside:
            break;
    }

    std::mt19937_64 rng(config.restart_seed);
    IndexSet current;
    switch (config.initial_set) {
        case InitialSet::AllGenerators:
            current = IndexSet::all(n);
            break;
        case InitialSet::Custom:
            if (config.custom_initial.dim() != n) {
                throw DimensionMismatch("custom initial set width " +
                                        std::to_string(config.custom_initial.dim()) +
                                        " does not match cone dimension " + std::to_string(n));
            }
            current = config.custom_initial;
            break;
        case InitialSet::Random:
            current = random_index_set(n, rng);
            break;
    }

    std::unordered_set<IndexSet, IndexSetHash> visited;
    visited.insert(current);

    while (result.stats.iterations < config.max_iterations) {
        IterationStep step = heuristic_iterate(cone, current, x, sign_tol);
        ++result.stats.iterations;
        result.stats.changes_per_iteration.push_back(step.swaps);
        result.stats.total_changes += step.swaps;
        const auto& seq = result.stats.changes_per_iteration;
        if (seq.size() >= 2 && seq[seq.size() - 1] > seq[seq.size() - 2]) {
            ++result.stats.increase_iterations;
        }

        if (step.swaps == 0) {
            result.projection = clamped_projection(cone, step.coeffs);
            result.polar_projection = clamped_polar_projection(cone, step.coeffs);
            result.final_set = current;
            result.status = HeuristicStatus::Converged;
            // A converged representation must reconstruct x; the Gram
            // solves can lose eps * kappa(E)^2, so the gate scales with
            // the conditioning recorded at construction.
            const double kappa = 1.0 / cone.rcond();
            const double gate = (cone.build_tolerance() +
                                 32.0 * std::numeric_limits<double>::epsilon() * kappa * kappa) *
                                (1.0 + x.norm());
            const double err = (reconstruct(cone, step.coeffs) - x).norm();
            if (!(err <= gate)) {
                throw SolveFailure("converged representation fails to reconstruct the "
                                   "input (error " + std::to_string(err) + ")");
            }
            return result;
        }

        if (visited.contains(step.next_set)) {
            result.stats.loop_detected = true;
            if (result.stats.restarts_used < config.max_restarts) {
                ++result.stats.restarts_used;
                current = random_index_set(n, rng);
                visited.clear();
                visited.insert(current);
                continue;
            }
            result.projection = clamped_projection(cone, step.coeffs);
            result.polar_projection = clamped_polar_projection(cone, step.coeffs);
            result.final_set = current;
            result.status = HeuristicStatus::LoopAborted;
            return result;
        }
        visited.insert(step.next_set);
        current = step.next_set;
    }

    // Budget exhausted: report the best-effort state of the last round.
    IterationStep last = heuristic_iterate(cone, current, x, sign_tol);
    result.projection = clamped_projection(cone, last.coeffs);
    result.polar_projection = clamped_polar_projection(cone, last.coeffs);
    result.final_set = current;
    result.status = HeuristicStatus::IterationBudgetExhausted;
    return result;
}

bool certify(const SimplicialCone& cone, const HeuristicResult& result,
             const Eigen::VectorXd& x, double tol) {
    if (result.status != HeuristicStatus::Converged) {
        return false;
    }
    return moreau_check(cone, x, result.projection, tol).passed;
}

} // namespace coneproj
