// Command-line front end: projection, polar computation, Moreau
// certification, exact oracle, and the Monte-Carlo experiment harness.
//
// Exit codes: 0 success, 1 computation failure (loop abort, exhausted
// budget, failed certificate), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coneproj/exact.hpp"
#include "coneproj/experiment.hpp"
#include "coneproj/heuristic.hpp"
#include "coneproj/matrix_io.hpp"
#include "coneproj/verify.hpp"

namespace {

using nlohmann::json;

json to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v(i));
    }
    return arr;
}

json stats_to_json(const coneproj::RunStats& stats) {
    json j;
    j["iterations"] = stats.iterations;
    j["total_changes"] = stats.total_changes;
    j["changes_per_iteration"] = stats.changes_per_iteration;
    j["increase_iterations"] = stats.increase_iterations;
    j["loop_detected"] = stats.loop_detected;
    j["restarts_used"] = stats.restarts_used;
    if (stats.shortcut) {
        j["shortcut"] = coneproj::to_string(*stats.shortcut);
    } else {
        j["shortcut"] = nullptr;
    }
    return j;
}

struct ProjectArgs {
    std::string cone_file;
    std::string point_file;
    std::optional<double> tol;
    int max_iter = 100;
    int restarts = 0;
    std::uint64_t seed = 0;
    std::string start = "all";
    std::string format = "json";
};

int cmd_project(const ProjectArgs& args) {
    const Eigen::MatrixXd e = coneproj::read_matrix_csv(args.cone_file);
    const Eigen::VectorXd x = coneproj::read_vector_csv(args.point_file);
    const coneproj::SimplicialCone cone = coneproj::SimplicialCone::build(e);
    if (x.size() != cone.dim()) {
        throw coneproj::InputError(args.point_file + ": point has " +
                                   std::to_string(x.size()) + " rows, cone file " +
                                   args.cone_file + " is " + std::to_string(cone.dim()) +
                                   "-dimensional");
    }

    coneproj::HeuristicConfig config;
    config.sign_tol = args.tol;
    config.max_iterations = args.max_iter;
    config.max_restarts = args.restarts;
    config.restart_seed = args.seed;
    config.initial_set = args.start == "random" ? coneproj::InitialSet::Random
                                                : coneproj::InitialSet::AllGenerators;

    const coneproj::HeuristicResult result = coneproj::heuristic_project(cone, x, config);

    if (args.format == "csv") {
        coneproj::write_vector_csv(std::cout, result.projection);
    } else {
        json j;
        j["projection"] = to_json(result.projection);
        j["polar_projection"] = to_json(result.polar_projection);
        j["final_set"] = result.final_set.members();
        j["status"] = coneproj::to_string(result.status);
        j["stats"] = stats_to_json(result.stats);
        std::cout << j.dump(2) << '\n';
    }
    return result.status == coneproj::HeuristicStatus::Converged ? 0 : 1;
}

int cmd_oracle(const std::string& cone_file, const std::string& point_file,
               std::optional<double> tol, int guard) {
    const Eigen::MatrixXd e = coneproj::read_matrix_csv(cone_file);
    const Eigen::VectorXd x = coneproj::read_vector_csv(point_file);
    const coneproj::SimplicialCone cone = coneproj::SimplicialCone::build(e);
    if (x.size() != cone.dim()) {
        throw coneproj::InputError(point_file + ": point has " + std::to_string(x.size()) +
                                   " rows, cone file " + cone_file + " is " +
                                   std::to_string(cone.dim()) + "-dimensional");
    }
    const double use_tol = tol.value_or(coneproj::default_sign_tol(x));
    const coneproj::ExactResult result =
        cone.subdual() ? coneproj::exact_project_subdual(cone, x, use_tol, guard)
                       : coneproj::exact_project(cone, x, use_tol, guard);
    json j;
    j["projection"] = to_json(result.projection);
    j["polar_projection"] = to_json(result.polar_projection);
    j["sector"] = result.sector.members();
    j["subsets_tried"] = result.subsets_tried;
    j["subdual_pruned"] = cone.subdual();
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_polar(const std::string& cone_file) {
    const Eigen::MatrixXd e = coneproj::read_matrix_csv(cone_file);
    const coneproj::SimplicialCone cone = coneproj::SimplicialCone::build(e);
    coneproj::write_matrix_csv(std::cout, cone.polar_generators());
    return 0;
}

int cmd_check(const std::string& cone_file, const std::string& point_file,
              const std::string& projection_file, std::optional<double> tol) {
    const Eigen::MatrixXd e = coneproj::read_matrix_csv(cone_file);
    const Eigen::VectorXd x = coneproj::read_vector_csv(point_file);
    const Eigen::VectorXd p = coneproj::read_vector_csv(projection_file);
    const coneproj::SimplicialCone cone = coneproj::SimplicialCone::build(e);
    if (x.size() != cone.dim() || p.size() != cone.dim()) {
        throw coneproj::InputError("check: vector dimensions do not match the cone");
    }
    const double use_tol = tol.value_or(coneproj::default_sign_tol(x));
    const coneproj::Certificate cert = coneproj::moreau_check(cone, x, p, use_tol);
    json j;
    j["cone_residual"] = cert.cone_residual;
    j["polar_residual"] = cert.polar_residual;
    j["orthogonality_residual"] = cert.orthogonality_residual;
    j["passed"] = cert.passed;
    j["tol"] = use_tol;
    std::cout << j.dump(2) << '\n';
    return cert.passed ? 0 : 1;
}

struct ExperimentArgs {
    std::vector<int> sizes;
    int trials = 10000;
    std::uint64_t seed = 0;
    std::string dist = "normal";
    std::string out_summary;
    std::string out_detail;
};

int cmd_experiment(const ExperimentArgs& args) {
    coneproj::ExperimentConfig config;
    config.sizes = args.sizes;
    config.trials_per_size = args.trials;
    config.master_seed = args.seed;
    config.generator_distribution = args.dist == "uniform"
                                        ? coneproj::GeneratorDistribution::UniformSymmetric
                                        : coneproj::GeneratorDistribution::StandardNormal;

    const coneproj::ExperimentReport report = coneproj::run_experiment(config);
    coneproj::print_summary_table(std::cout, report.aggregates);

    if (!args.out_summary.empty()) {
        std::ofstream out(args.out_summary);
        if (!out) {
            throw coneproj::InputError(args.out_summary + ": cannot open for writing");
        }
        coneproj::emit_summary_csv(out, report.aggregates);
    }
    if (!args.out_detail.empty()) {
        std::ofstream out(args.out_detail);
        if (!out) {
            throw coneproj::InputError(args.out_detail + ": cannot open for writing");
        }
        coneproj::emit_detail_csv(out, report.details);
    }
    // Loops are data, not failure.
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Metric projection onto simplicial cones"};
    app.require_subcommand(1);

    ProjectArgs pa;
    CLI::App* project = app.add_subcommand(
        "project", "Project a point with the swap-iteration heuristic");
    project->add_option("cone", pa.cone_file, "Generator matrix CSV")->required();
    project->add_option("point", pa.point_file, "Point CSV (single column)")->required();
    double project_tol = 0.0;
    CLI::Option* project_tol_opt =
        project->add_option("--tol", project_tol, "Sign tolerance (default 1e-10*(1+|x|))");
    project->add_option("--max-iter", pa.max_iter, "Iteration budget")->default_val(100);
    project->add_option("--restarts", pa.restarts, "Random restarts after a loop")
        ->default_val(0);
    project->add_option("--seed", pa.seed, "Seed for random starts/restarts")->default_val(0);
    project->add_option("--start", pa.start, "Initial basis: all | random")
        ->check(CLI::IsMember({"all", "random"}))
        ->default_val("all");
    project->add_option("--format", pa.format, "Output: json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_val("json");

    std::string oracle_cone, oracle_point;
    double oracle_tol = 0.0;
    int oracle_guard = coneproj::kDefaultDimGuard;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "Exact projection by exhaustive sector enumeration (2^n solves)");
    oracle->add_option("cone", oracle_cone, "Generator matrix CSV")->required();
    oracle->add_option("point", oracle_point, "Point CSV")->required();
    CLI::Option* oracle_tol_opt = oracle->add_option("--tol", oracle_tol, "Sign tolerance");
    oracle->add_option("--guard", oracle_guard, "Dimension guard (hard cap 25)")
        ->default_val(coneproj::kDefaultDimGuard);

    std::string polar_cone;
    CLI::App* polar = app.add_subcommand("polar", "Print the polar matrix U = -(E^-1)^T");
    polar->add_option("cone", polar_cone, "Generator matrix CSV")->required();

    std::string check_cone, check_point, check_proj;
    double check_tol = 0.0;
    CLI::App* check = app.add_subcommand("check", "Moreau certificate for a candidate projection");
    check->add_option("cone", check_cone, "Generator matrix CSV")->required();
    check->add_option("point", check_point, "Point CSV")->required();
    check->add_option("projection", check_proj, "Candidate projection CSV")->required();
    CLI::Option* check_tol_opt = check->add_option("--tol", check_tol, "Certificate tolerance");

    ExperimentArgs ea;
    CLI::App* experiment =
        app.add_subcommand("experiment", "Monte-Carlo sweep with per-size summary statistics");
    experiment->add_option("--sizes", ea.sizes, "Cone dimensions, comma separated")
        ->required()
        ->delimiter(',');
    experiment->add_option("--trials", ea.trials, "Trials per size")->default_val(10000);
    experiment->add_option("--seed", ea.seed, "Master seed")->default_val(0);
    experiment->add_option("--dist", ea.dist, "Generator distribution: normal | uniform")
        ->check(CLI::IsMember({"normal", "uniform"}))
        ->default_val("normal");
    experiment->add_option("--out-summary", ea.out_summary, "Summary CSV path");
    experiment->add_option("--out-detail", ea.out_detail, "Per-trial detail CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(project)) {
            if (*project_tol_opt) {
                pa.tol = project_tol;
            }
            return cmd_project(pa);
        }
        if (app.got_subcommand(oracle)) {
            std::optional<double> tol;
            if (*oracle_tol_opt) {
                tol = oracle_tol;
            }
            return cmd_oracle(oracle_cone, oracle_point, tol, oracle_guard);
        }
        if (app.got_subcommand(polar)) {
            return cmd_polar(polar_cone);
        }
        if (app.got_subcommand(check)) {
            std::optional<double> tol;
            if (*check_tol_opt) {
                tol = check_tol;
            }
            return cmd_check(check_cone, check_point, check_proj, tol);
        }
        if (app.got_subcommand(experiment)) {
            for (int s : ea.sizes) {
                if (s < 1) {
                    throw coneproj::InputError("--sizes entries must be positive, got " +
                                               std::to_string(s));
                }
            }
            if (ea.trials < 1) {
                throw coneproj::InputError("--trials must be >= 1");
            }
            return cmd_experiment(ea);
        }
    } catch (const coneproj::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coneproj::DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coneproj::NonFinite& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coneproj::SingularGenerators& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coneproj::DimensionGuard& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coneproj::Error& e) {
        // SolveFailure, NoSectorFound, GenerationFailure: the computation
        // itself failed on valid input.
        std::cerr << "computation failed: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
