#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coneproj/heuristic.hpp"
#include "coneproj/simplicial_cone.hpp"

namespace coneproj {

enum class GeneratorDistribution { StandardNormal, UniformSymmetric };
enum class PointDistribution { StandardNormal };

const char* to_string(GeneratorDistribution d);

struct ExperimentConfig {
    std::vector<int> sizes;
    int trials_per_size = 10000;
    std::uint64_t master_seed = 0;
    GeneratorDistribution generator_distribution = GeneratorDistribution::StandardNormal;
    PointDistribution point_distribution = PointDistribution::StandardNormal;
    HeuristicConfig heuristic;
    /// Worker threads for the trial sweep; 0 picks the hardware count.
    /// Results are identical for every choice.
    int threads = 0;
};

/// One detail row per trial; the summary statistics are a pure function
/// of these rows (see aggregate_records), which is what the CSV
/// round-trip leans on.
struct TrialRecord {
    int size = 0;
    long trial_index = 0;
    int iterations = 0;
    long total_changes = 0;
    int increase_iterations = 0;
    bool loop = false;  ///< trial ended LoopAborted
};

/// Per-size aggregate mirroring the summary table columns. Loop-aborted
/// trials count toward pct_loops but are excluded from every other
/// statistic. ci95 columns are 1.96 * sd / sqrt(included trials).
struct SizeAggregate {
    int size = 0;
    long trials = 0;
    double mean_changes = 0.0;
    double ci_changes = 0.0;
    double mean_iterations = 0.0;
    double ci_iterations = 0.0;
    /// Pooled: 100 * (sum of increase iterations) / (sum of iterations),
    /// with a pooled binomial 95% CI.
    double pct_increase = 0.0;
    double ci_increase = 0.0;
    double pct_loops = 0.0;
    int max_iterations = 0;
    long excluded_loops = 0;
};

struct ExperimentReport {
    std::vector<SizeAggregate> aggregates;
    /// Ordered by (size, trial_index).
    std::vector<TrialRecord> details;
};

/// Draw an n-by-n generator matrix entrywise i.i.d. and build the cone,
/// redrawing on singular matrices (at most 100 attempts, then
/// GenerationFailure). Bit-identical for identical (n, dist, seed).
SimplicialCone random_cone(int n, GeneratorDistribution dist, std::uint64_t seed);

/// The deterministic (cone, point) pair of a trial. Exposed so oracle
/// sweeps can replay any trial.
struct TrialInstance {
    SimplicialCone cone;
    Eigen::VectorXd point;
};
TrialInstance trial_instance(int size, long trial_index, const ExperimentConfig& config);

/// Sample the trial's instance, run the heuristic, return its counters.
/// Deterministic given (config, size, trial_index) regardless of
/// execution order.
RunStats run_trial(int size, long trial_index, const ExperimentConfig& config);

/// The full sweep: all trials for all sizes (possibly concurrent),
/// aggregated per size. Identical output for any thread count.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Summary statistics from detail rows; run_experiment uses this exact
/// function, so re-aggregating an emitted detail CSV reproduces the
/// summary row.
SizeAggregate aggregate_records(int size, const std::vector<TrialRecord>& records);

/// CSV emission. Summary header:
/// size,trials,mean_changes,ci_changes,mean_iterations,ci_iterations,
/// pct_increase,ci_increase,pct_loops,max_iterations,excluded_loops
void emit_summary_csv(std::ostream& out, const std::vector<SizeAggregate>& aggregates);
/// Detail header: size,trial_index,iterations,total_changes,increase_iterations,loop
void emit_detail_csv(std::ostream& out, const std::vector<TrialRecord>& details);

/// Parse a detail CSV back into rows (the re-aggregation path).
std::vector<TrialRecord> parse_detail_csv(std::istream& in, const std::string& source_name);

/// Human-readable aligned summary table.
void print_summary_table(std::ostream& out, const std::vector<SizeAggregate>& aggregates);

} // namespace coneproj
