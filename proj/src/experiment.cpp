#include "coneproj/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "coneproj/errors.hpp"

namespace coneproj {

const char* to_string(GeneratorDistribution d) {
    switch (d) {
        case GeneratorDistribution::StandardNormal: return "normal";
        case GeneratorDistribution::UniformSymmetric: return "uniform";
    }
    return "?";
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ b);
}

// Variate transforms are hand-rolled on top of the (standardized)
// mt19937_64 stream so experiment output does not depend on the standard
// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform_symmetric() { return 2.0 * uniform01() - 1.0; }

    double normal() {  // Box-Muller, one spare cached
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) {
            u1 = uniform01();
        }
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

double draw(Rng& rng, GeneratorDistribution dist) {
    switch (dist) {
        case GeneratorDistribution::StandardNormal: return rng.normal();
        case GeneratorDistribution::UniformSymmetric: return rng.uniform_symmetric();
    }
    return 0.0;
}

Eigen::VectorXd random_point(int n, PointDistribution dist, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXd x(n);
    switch (dist) {
        case PointDistribution::StandardNormal:
            for (int i = 0; i < n; ++i) {
                x(i) = rng.normal();
            }
            break;
    }
    return x;
}

std::uint64_t trial_seed(const ExperimentConfig& config, int size, long trial_index) {
    return mix_seed(mix_seed(config.master_seed, static_cast<std::uint64_t>(size)),
                    static_cast<std::uint64_t>(trial_index));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

SimplicialCone random_cone(int n, GeneratorDistribution dist, std::uint64_t seed) {
    if (n < 1) {
        throw DimensionMismatch("random_cone: dimension must be >= 1");
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Eigen::MatrixXd e(n, n);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) {
                e(r, c) = draw(rng, dist);
            }
        }
        try {
            return SimplicialCone::build(e);
        } catch (const SingularGenerators&) {
            // redraw
        }
    }
    throw GenerationFailure("100 consecutive singular draws at dimension " + std::to_string(n));
}

TrialInstance trial_instance(int size, long trial_index, const ExperimentConfig& config) {
    const std::uint64_t base = trial_seed(config, size, trial_index);
    SimplicialCone cone = random_cone(size, config.generator_distribution, mix_seed(base, 1));
    Eigen::VectorXd point = random_point(size, config.point_distribution, mix_seed(base, 2));
    return TrialInstance{std::move(cone), std::move(point)};
}

namespace {

HeuristicResult run_trial_full(int size, long trial_index, const ExperimentConfig& config) {
    const TrialInstance inst = trial_instance(size, trial_index, config);
    HeuristicConfig h = config.heuristic;
    h.restart_seed = mix_seed(trial_seed(config, size, trial_index), 3);
    return heuristic_project(inst.cone, inst.point, h);
}

} // namespace

RunStats run_trial(int size, long trial_index, const ExperimentConfig& config) {
    return run_trial_full(size, trial_index, config).stats;
}

SizeAggregate aggregate_records(int size, const std::vector<TrialRecord>& records) {
    SizeAggregate agg;
    agg.size = size;
    agg.trials = static_cast<long>(records.size());

    long included = 0;
    double sum_changes = 0.0;
    double sum_iters = 0.0;
    long pooled_iters = 0;
    long pooled_increases = 0;
    for (const TrialRecord& r : records) {
        agg.max_iterations = std::max(agg.max_iterations, r.iterations);
        if (r.loop) {
            ++agg.excluded_loops;
            continue;
        }
        ++included;
        sum_changes += static_cast<double>(r.total_changes);
        sum_iters += static_cast<double>(r.iterations);
        pooled_iters += r.iterations;
        pooled_increases += r.increase_iterations;
    }
    agg.pct_loops = agg.trials > 0
                        ? 100.0 * static_cast<double>(agg.excluded_loops) /
                              static_cast<double>(agg.trials)
                        : 0.0;
    if (included == 0) {
        return agg;
    }
    agg.mean_changes = sum_changes / static_cast<double>(included);
    agg.mean_iterations = sum_iters / static_cast<double>(included);

    if (included > 1) {
        double ss_changes = 0.0;
        double ss_iters = 0.0;
        for (const TrialRecord& r : records) {
            if (r.loop) {
                continue;
            }
            const double dc = static_cast<double>(r.total_changes) - agg.mean_changes;
            const double di = static_cast<double>(r.iterations) - agg.mean_iterations;
            ss_changes += dc * dc;
            ss_iters += di * di;
        }
        const double denom = static_cast<double>(included - 1);
        const double root_n = std::sqrt(static_cast<double>(included));
        agg.ci_changes = 1.96 * std::sqrt(ss_changes / denom) / root_n;
        agg.ci_iterations = 1.96 * std::sqrt(ss_iters / denom) / root_n;
    }

    if (pooled_iters > 0) {
        const double p = static_cast<double>(pooled_increases) / static_cast<double>(pooled_iters);
        agg.pct_increase = 100.0 * p;
        agg.ci_increase =
            100.0 * 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(pooled_iters));
    }
    return agg;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (config.sizes.empty()) {
        throw std::invalid_argument("experiment: sizes must be nonempty");
    }
    if (config.trials_per_size < 1) {
        throw std::invalid_argument("experiment: trials_per_size must be >= 1");
    }
    int workers = config.threads;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) {
            workers = 1;
        }
    }

    ExperimentReport report;
    for (int size : config.sizes) {
        const long trials = config.trials_per_size;
        std::vector<TrialRecord> records(static_cast<std::size_t>(trials));

        // Trials write into preassigned slots, so the aggregate is
        // independent of scheduling.
        std::atomic<long> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&]() {
            for (;;) {
                const long t = next.fetch_add(1);
                if (t >= trials || failed.load()) {
                    return;
                }
                try {
                    const HeuristicResult res = run_trial_full(size, t, config);
                    TrialRecord& rec = records[static_cast<std::size_t>(t)];
                    rec.size = size;
                    rec.trial_index = t;
                    rec.iterations = res.stats.iterations;
                    rec.total_changes = res.stats.total_changes;
                    rec.increase_iterations = res.stats.increase_iterations;
                    rec.loop = res.status == HeuristicStatus::LoopAborted;
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                    failed.store(true);
                    return;
                }
            }
        };
        if (workers == 1 || trials == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            const int count = static_cast<int>(std::min<long>(workers, trials));
            pool.reserve(static_cast<std::size_t>(count));
            for (int w = 0; w < count; ++w) {
                pool.emplace_back(worker);
            }
            for (std::thread& th : pool) {
                th.join();
            }
        }
        if (first_error) {
            std::rethrow_exception(first_error);
        }

        report.aggregates.push_back(aggregate_records(size, records));
        report.details.insert(report.details.end(), records.begin(), records.end());
    }
    return report;
}

void emit_summary_csv(std::ostream& out, const std::vector<SizeAggregate>& aggregates) {
    out << "size,trials,mean_changes,ci_changes,mean_iterations,ci_iterations,"
           "pct_increase,ci_increase,pct_loops,max_iterations,excluded_loops\n";
    for (const SizeAggregate& a : aggregates) {
        out << a.size << ',' << a.trials << ',' << fmt(a.mean_changes) << ','
            << fmt(a.ci_changes) << ',' << fmt(a.mean_iterations) << ','
            << fmt(a.ci_iterations) << ',' << fmt(a.pct_increase) << ','
            << fmt(a.ci_increase) << ',' << fmt(a.pct_loops) << ',' << a.max_iterations
            << ',' << a.excluded_loops << '\n';
    }
}

void emit_detail_csv(std::ostream& out, const std::vector<TrialRecord>& details) {
    out << "size,trial_index,iterations,total_changes,increase_iterations,loop\n";
    for (const TrialRecord& r : details) {
        out << r.size << ',' << r.trial_index << ',' << r.iterations << ','
            << r.total_changes << ',' << r.increase_iterations << ',' << (r.loop ? 1 : 0)
            << '\n';
    }
}

std::vector<TrialRecord> parse_detail_csv(std::istream& in, const std::string& source_name) {
    std::vector<TrialRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("size,", 0) == 0) {
                continue;
            }
        }
        TrialRecord r;
        int loop_flag = 0;
        if (std::sscanf(line.c_str(), "%d,%ld,%d,%ld,%d,%d", &r.size, &r.trial_index,
                        &r.iterations, &r.total_changes, &r.increase_iterations,
                        &loop_flag) != 6) {
            throw InputError(source_name + ":" + std::to_string(line_no) +
                             ": malformed detail row");
        }
        r.loop = loop_flag != 0;
        records.push_back(r);
    }
    return records;
}

void print_summary_table(std::ostream& out, const std::vector<SizeAggregate>& aggregates) {
    out << std::setw(6) << "size" << std::setw(9) << "trials" << std::setw(12) << "changes"
        << std::setw(10) << "ci95" << std::setw(12) << "iterations" << std::setw(10) << "ci95"
        << std::setw(11) << "increase%" << std::setw(10) << "ci95" << std::setw(9) << "loops%"
        << std::setw(9) << "max_it" << std::setw(9) << "loops" << '\n';
    const auto old_flags = out.flags();
    const auto old_prec = out.precision();
    out << std::fixed;
    for (const SizeAggregate& a : aggregates) {
        out << std::setw(6) << a.size << std::setw(9) << a.trials << std::setprecision(3)
            << std::setw(12) << a.mean_changes << std::setw(10) << a.ci_changes
            << std::setw(12) << a.mean_iterations << std::setw(10) << a.ci_iterations
            << std::setw(11) << a.pct_increase << std::setw(10) << a.ci_increase
            << std::setw(9) << a.pct_loops << std::setw(9) << a.max_iterations
            << std::setw(9) << a.excluded_loops << '\n';
    }
    out.flags(old_flags);
    out.precision(old_prec);
}

} // namespace coneproj
