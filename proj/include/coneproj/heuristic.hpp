#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coneproj/simplicial_cone.hpp"

namespace coneproj {

/// Which mixed basis the swap iteration starts from.
enum class InitialSet { AllGenerators, Custom, Random };

struct HeuristicConfig {
    /// Absolute negativity threshold for the swap tests. When unset,
    /// 1e-10 * (1 + |x|) is used. A coefficient in (-sign_tol, 0) does not
    /// trigger a swap and clamps to 0 on output.
    std::optional<double> sign_tol;
    int max_iterations = 100;
    int max_restarts = 0;
    std::uint64_t restart_seed = 0;
    InitialSet initial_set = InitialSet::AllGenerators;
    /// Starting set when initial_set == Custom.
    IndexSet custom_initial;
};

enum class HeuristicStatus { Converged, LoopAborted, IterationBudgetExhausted };

const char* to_string(HeuristicStatus s);

/// Per-run counters. An iteration is one decompose round; the final round
/// whose swap count is zero is counted, while the membership shortcuts
/// perform zero iterations.
struct RunStats {
    int iterations = 0;
    long total_changes = 0;
    std::vector<int> changes_per_iteration;
    /// Iterations k >= 2 with changes[k] > changes[k-1]; the first
    /// iteration has no predecessor and never counts.
    int increase_iterations = 0;
    bool loop_detected = false;
    int restarts_used = 0;
    /// Set iff a membership shortcut resolved the point (InCone or InPolar).
    std::optional<Membership> shortcut;
};

struct HeuristicResult {
    Eigen::VectorXd projection;
    Eigen::VectorXd polar_projection;
    IndexSet final_set;
    RunStats stats;
    HeuristicStatus status = HeuristicStatus::Converged;
};

/// One swap round of the iteration.
struct IterationStep {
    IndexSet next_set;         ///< I with all negative-coefficient indices swapped
    MixedCoefficients coeffs;  ///< the decomposition the swap decision used
    int swaps = 0;             ///< number of indices moved (0 means converged)
};

/// Decompose x against the mixed basis of I, then swap every index whose
/// coefficient is below -sign_tol: members with negative alpha leave I,
/// complement members with negative beta join it, all simultaneously.
IterationStep heuristic_iterate(const SimplicialCone& cone, const IndexSet& I,
                                const Eigen::VectorXd& x, double sign_tol);

/// The full swap-iteration projection. Membership shortcuts run first
/// (x in K° projects to 0, x in K to itself, zero iterations); otherwise
/// the iteration runs from the configured starting set until the swap
/// count reaches zero, a previously visited index set recurs (loop; a
/// restart from a random set is taken while restarts remain), or the
/// iteration budget is exhausted. On convergence the result carries
/// P_K x = sum max(alpha,0) e_i and passes the Moreau certificate, which
/// makes it the exact projection.
HeuristicResult heuristic_project(const SimplicialCone& cone, const Eigen::VectorXd& x,
                                  const HeuristicConfig& config = {});

/// Moreau certificate for a converged result: projection in K, residual
/// x - projection in K°, and the two orthogonal, all within tol.
/// Returns false for non-converged statuses or any violated residual.
bool certify(const SimplicialCone& cone, const HeuristicResult& result,
             const Eigen::VectorXd& x, double tol);

} // namespace coneproj
