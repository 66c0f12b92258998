// Command-line front end for the UAV service-economics toolkit: placement
// mechanisms, coverage deployment solvers, patrol planning, and the seeded
// experiment harness.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavecon/deployment.hpp"
#include "uavecon/patrol.hpp"
#include "uavecon/placement.hpp"
#include "uavecon/scenario.hpp"
#include "uavecon/serialization.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvalidInput = 2;

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format = "csv";
};

void emit(const uavecon::json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        uavecon::write_text_file(out_path, text);
    }
}

uavecon::ScenarioConfig scenario_from(const GlobalOptions& global) {
    uavecon::ScenarioConfig cfg;
    if (!global.config_path.empty()) {
        cfg = uavecon::load_json_file(global.config_path)
                  .get<uavecon::ScenarioConfig>();
    }
    if (global.seed) cfg.seed = *global.seed;
    return cfg;
}

int run_place_solve(const std::string& input, const GlobalOptions& global) {
    using namespace uavecon;
    const Profile profile = load_json_file(input).get<Profile>();
    json out;
    if (profile.kind == UserKind::Facility) {
        const Point3 mech = mechanism1_weighted_median(profile);
        const Point3 opt = weighted_mean_optimal(profile);
        out = {{"kind", "facility"},
               {"mechanism",
                {{"name", "weighted_median"},
                 {"location", mech},
                 {"social_cost", social_cost(mech, profile)}}},
               {"benchmark",
                {{"name", "weighted_mean_optimal"},
                 {"location", opt},
                 {"social_cost", social_cost(opt, profile)}}},
               {"approximation_ratio",
                approximation_ratio(MechanismKind::WeightedMedian, profile)}};
    } else {
        const Point3 mech = mechanism2_majority_corner(profile);
        const Point3 opt = obnoxious_optimal_vertex(profile);
        out = {{"kind", "adverse"},
               {"mechanism",
                {{"name", "majority_corner"},
                 {"location", mech},
                 {"social_utility", social_utility(mech, profile)}}},
               {"benchmark",
                {{"name", "obnoxious_optimal_vertex"},
                 {"location", opt},
                 {"social_utility", social_utility(opt, profile)}}},
               {"approximation_ratio",
                approximation_ratio(MechanismKind::MajorityCorner, profile)}};
    }
    emit(out, global.out_path);
    return kExitOk;
}

int run_place_fuzz(int profiles, const GlobalOptions& global) {
    uavecon::MechanismSuiteConfig cfg;
    cfg.profiles = profiles;
    if (global.seed) cfg.seed = *global.seed;
    const auto report = uavecon::run_mechanism_suite(cfg);
    emit(uavecon::json(report), global.out_path);
    const bool clean = report.median_mechanism.violations == 0 &&
                       report.corner_mechanism.violations == 0 &&
                       report.mean_counterexample_violations >= 1 &&
                       report.vertex_counterexample_violations >= 1;
    return clean ? kExitOk : kExitInfeasible;
}

int emit_deployment(const std::optional<uavecon::Deployment>& deployment,
                    const char* objective, const GlobalOptions& global) {
    if (!deployment) {
        std::cerr << "infeasible: the fleet cannot cover the interval\n";
        return kExitInfeasible;
    }
    uavecon::json out(*deployment);
    out["objective"] = objective;
    emit(out, global.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV mobile-service economics toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--config", global.config_path, "Scenario config JSON file");
    app.add_option("--seed", global.seed, "Override the scenario seed");
    app.add_option("--out", global.out_path, "Output path (default stdout)");
    app.add_option("--format", global.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // place
    auto* place = app.add_subcommand("place", "UAV placement mechanisms");
    place->require_subcommand(1);
    auto* place_solve =
        place->add_subcommand("solve", "Run mechanism + benchmark on a profile");
    std::string profile_path;
    place_solve->add_option("--input", profile_path, "Profile JSON file")
        ->required();
    auto* place_fuzz = place->add_subcommand(
        "fuzz", "Strategyproofness fuzz harness for both mechanisms");
    int fuzz_profiles = 1000;
    place_fuzz->add_option("--profiles", fuzz_profiles, "Profiles per mechanism");

    // deploy
    auto* deploy = app.add_subcommand("deploy", "Energy-optimal line coverage");
    deploy->require_subcommand(1);
    std::string fleet_path;
    double epsilon = 0.05;
    std::optional<double> delta;
    std::string oracle_objective = "minmax";
    std::string oracle_order = "preserve";
    auto* deploy_minmax =
        deploy->add_subcommand("minmax", "Minimize the bottleneck energy");
    deploy_minmax->add_option("--input", fleet_path, "Fleet JSON file")->required();
    deploy_minmax->add_option("--epsilon", epsilon, "Approximation tolerance");
    auto* deploy_minsum =
        deploy->add_subcommand("minsum", "Minimize the total energy");
    deploy_minsum->add_option("--input", fleet_path, "Fleet JSON file")->required();
    deploy_minsum->add_option("--delta", delta, "Frontier grid step");
    auto* deploy_oracle = deploy->add_subcommand(
        "oracle", "Exhaustive small-instance benchmark (n <= 5)");
    deploy_oracle->add_option("--input", fleet_path, "Fleet JSON file")->required();
    deploy_oracle->add_option("--objective", oracle_objective, "minmax or minsum")
        ->check(CLI::IsMember({"minmax", "minsum"}));
    deploy_oracle->add_option("--order", oracle_order,
                              "preserve (initial order) or any")
        ->check(CLI::IsMember({"preserve", "any"}));
    deploy_oracle->add_option("--delta", delta, "Frontier grid step");

    // patrol
    auto* patrol = app.add_subcommand("patrol", "Cost-aware patrol planning");
    patrol->require_subcommand(1);
    uavecon::PatrolParams params;
    double power_const = 1.0;
    std::vector<double> power_quad;
    const auto add_param_options = [&](CLI::App* cmd) {
        cmd->add_option("--length", params.total_edge_length, "Cell edge length L");
        cmd->add_option("--depopulated", params.depopulated_length,
                        "Depopulated span");
        cmd->add_option("--count", params.uav_count, "Number of UAVs");
        cmd->add_option("--delay", params.service_delay, "Service delay D");
        cmd->add_option("--cost", params.equipment_cost, "Equipment cost c");
        cmd->add_option("--power-const", power_const, "Constant power draw");
        cmd->add_option("--power-quad", power_quad,
                        "Affine-quadratic power: a b")
            ->expected(2);
    };
    auto* patrol_compare = patrol->add_subcommand(
        "compare", "Partition vs cyclic single-cell patrolling");
    add_param_options(patrol_compare);
    int rows = 1, cols = 1;
    double side = 1.0;
    std::string graph_path;
    const auto add_graph_options = [&](CLI::App* cmd) {
        cmd->add_option("--rows", rows, "Lattice rows");
        cmd->add_option("--cols", cols, "Lattice columns");
        cmd->add_option("--side", side, "Hexagon side length");
        cmd->add_option("--input", graph_path, "Graph JSON (instead of lattice)");
    };
    auto* patrol_build =
        patrol->add_subcommand("build-graph", "Hexagonal cell lattice as JSON");
    add_graph_options(patrol_build);
    auto* patrol_tour =
        patrol->add_subcommand("tour", "Chinese Postman tour over all edges");
    add_graph_options(patrol_tour);
    auto* patrol_split =
        patrol->add_subcommand("split", "Split the tour into k depot routes");
    add_graph_options(patrol_split);
    int split_k = 2;
    patrol_split->add_option("--k", split_k, "Number of routes");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Seeded studies");
    experiment->require_subcommand(1);
    auto* experiment_tradeoff = experiment->add_subcommand(
        "tradeoff", "Min-max vs min-sum deployment comparison");
    auto* experiment_mechanisms = experiment->add_subcommand(
        "mechanisms", "Strategyproofness and approximation-ratio suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (place_solve->parsed()) return run_place_solve(profile_path, global);
        if (place_fuzz->parsed()) return run_place_fuzz(fuzz_profiles, global);

        if (deploy_minmax->parsed()) {
            const auto fleet =
                uavecon::load_json_file(fleet_path).get<uavecon::Fleet>();
            return emit_deployment(uavecon::minmax_general(fleet, epsilon),
                                   "minmax", global);
        }
        if (deploy_minsum->parsed()) {
            const auto fleet =
                uavecon::load_json_file(fleet_path).get<uavecon::Fleet>();
            return emit_deployment(
                uavecon::minsum_dp(fleet, delta.value_or(fleet.beta / 200.0)),
                "minsum", global);
        }
        if (deploy_oracle->parsed()) {
            const auto fleet =
                uavecon::load_json_file(fleet_path).get<uavecon::Fleet>();
            const auto objective = oracle_objective == "minmax"
                                       ? uavecon::Objective::MinMax
                                       : uavecon::Objective::MinSum;
            const auto order = oracle_order == "preserve"
                                   ? uavecon::OrderMode::OrderPreserving
                                   : uavecon::OrderMode::Unrestricted;
            return emit_deployment(
                uavecon::brute_force_oracle(
                    fleet, delta.value_or(fleet.beta / 200.0), objective, order),
                oracle_objective.c_str(), global);
        }

        if (patrol_compare->parsed()) {
            params.power = power_quad.empty()
                               ? uavecon::PowerModel::constant(power_const)
                               : uavecon::PowerModel::affine_quadratic(
                                     power_quad[0], power_quad[1]);
            const auto cmp = uavecon::compare_schemes(params);
            emit(uavecon::json{
                     {"best", cmp.best == uavecon::Scheme::Cyclic ? "cyclic"
                                                                  : "partition"},
                     {"partition_cost", cmp.partition_cost},
                     {"cyclic_cost", cmp.cyclic_cost},
                     {"partition_speed",
                      uavecon::required_speed(uavecon::Scheme::Partition, params)},
                     {"cyclic_speed",
                      uavecon::required_speed(uavecon::Scheme::Cyclic, params)}},
                 global.out_path);
            return kExitOk;
        }
        if (patrol_build->parsed() || patrol_tour->parsed() ||
            patrol_split->parsed()) {
            const uavecon::CellGraph graph =
                graph_path.empty()
                    ? uavecon::build_cell_graph(rows, cols, side)
                    : uavecon::load_json_file(graph_path).get<uavecon::CellGraph>();
            if (patrol_build->parsed()) {
                emit(uavecon::json(graph), global.out_path);
                return kExitOk;
            }
            const uavecon::Tour tour = uavecon::cpp_tour(graph);
            if (patrol_tour->parsed()) {
                uavecon::json out(tour);
                out["total_edge_length"] = graph.total_edge_length();
                emit(out, global.out_path);
                return kExitOk;
            }
            const auto split = uavecon::split_k_tours(tour, graph, split_k);
            emit(uavecon::json{{"tour_length", tour.length},
                               {"max_route_length", split.max_route_length},
                               {"routes", split.routes}},
                 global.out_path);
            return kExitOk;
        }

        if (experiment_tradeoff->parsed()) {
            const auto cfg = scenario_from(global);
            const auto outcome = uavecon::run_tradeoff_experiment(cfg);
            if (outcome.infeasible_flagged > 0) {
                std::cerr << "warning: " << outcome.infeasible_flagged
                          << " trial(s) had no feasible fleet in 10 draws\n";
            }
            if (global.format == "json") {
                emit(uavecon::json(outcome.records), global.out_path);
            } else {
                const std::string csv = uavecon::records_to_csv(outcome.records);
                if (global.out_path.empty()) {
                    std::cout << csv;
                } else {
                    uavecon::write_text_file(global.out_path, csv);
                }
            }
            return kExitOk;
        }
        if (experiment_mechanisms->parsed()) {
            uavecon::MechanismSuiteConfig cfg;
            if (global.seed) cfg.seed = *global.seed;
            emit(uavecon::json(uavecon::run_mechanism_suite(cfg)),
                 global.out_path);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
