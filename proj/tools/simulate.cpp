/*
 * Monte Carlo simulation driver. Runs a sweep from a preset or a JSON config,
 * writes trials.csv and summary.json, and offers debug dumps of the scheduling
 * graph and the power-iteration trace for the first realization.
 */
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ncsched/channel.hpp"
#include "ncsched/clique.hpp"
#include "ncsched/experiment.hpp"
#include "ncsched/graph.hpp"
#include "ncsched/power.hpp"
#include "ncsched/rng.hpp"

namespace {

// First (point 0, trial 0) realization of the configured experiment.
struct FirstRealization {
    ncsched::Instance instance;
    ncsched::ChannelState channel;
};

FirstRealization first_realization(const ncsched::ExperimentConfig& config) {
    ncsched::Scenario scenario = config.base;
    if (config.axis == ncsched::SweepAxis::NumUsers)
        scenario.num_users = static_cast<int>(config.numeric_values.front());
    else if (config.axis == ncsched::SweepAxis::FronthaulCapacity)
        scenario.fronthaul_capacity_bps = config.numeric_values.front();
    ncsched::CachingLevelMode mode = config.base_caching_level;
    if (config.axis == ncsched::SweepAxis::CachingLevel) mode = config.caching_values.front();

    const std::uint64_t seed = ncsched::mix_seed(config.master_seed, 0, 0);
    scenario.rng_seed = seed;
    auto instance = ncsched::apply_caching_level(ncsched::generate_instance(scenario), mode);
    const auto placement = ncsched::place_nodes(scenario, ncsched::mix_seed(seed, 101));
    auto channel = ncsched::draw_channel(scenario, placement, ncsched::mix_seed(seed, 202));
    return {std::move(instance), std::move(channel)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network-coded caching scheduler simulation"};

    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    std::string schemes_csv;
    std::string caching_mode;
    std::string dump_graph_path;
    std::string dump_trace_path;
    int trials = -1;
    int threads = -1;
    int exact_limit = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double fronthaul = -1.0;

    app.add_option("--config", config_path, "JSON experiment config file");
    app.add_option("--preset", preset_name, "Built-in preset: fig2a, fig2b or fig4");
    app.add_option("--trials", trials, "Override the Monte Carlo trial count");
    app.add_option("--seed", seed, "Override the master seed")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--scheme", schemes_csv,
                   "Comma-separated scheme list: proposed, classical_idnc, uncoded, ra_idnc");
    app.add_option("--out", out_dir, "Output directory for trials.csv and summary.json");
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--exact-limit", exact_limit, "Exact clique solver size limit");
    app.add_option("--fronthaul", fronthaul, "Override fronthaul capacity (bits/s)");
    app.add_option("--caching-mode", caching_mode,
                   "Caching level: three_level, two_level or no_caching");
    app.add_option("--dump-graph", dump_graph_path,
                   "Write the first realization's scheduling graph and exit");
    app.add_option("--dump-ife-trace", dump_trace_path,
                   "Write the first realization's power iteration trace and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (config_path.empty() == preset_name.empty()) {
            std::cerr << "error: exactly one of --config or --preset is required\n";
            return 1;
        }

        ncsched::ExperimentConfig config;
        if (!config_path.empty()) {
            config = ncsched::load_config_file(config_path);
        } else {
            const auto preset = ncsched::preset_config(preset_name);
            if (!preset) {
                std::cerr << "error: unknown preset '" << preset_name << "'\n";
                return 1;
            }
            config = *preset;
        }

        if (trials >= 0) config.trials = trials;
        if (seed_set) config.master_seed = seed;
        if (threads >= 0) config.threads = threads;
        if (exact_limit >= 0) config.solver.exact_limit = exact_limit;
        if (fronthaul >= 0.0) config.base.fronthaul_capacity_bps = fronthaul;
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (!caching_mode.empty()) {
            const auto mode = ncsched::parse_caching_level(caching_mode);
            if (!mode) {
                std::cerr << "error: unknown caching mode '" << caching_mode << "'\n";
                return 1;
            }
            config.base_caching_level = *mode;
        }
        if (!schemes_csv.empty()) {
            config.schemes.clear();
            std::size_t start = 0;
            while (start <= schemes_csv.size()) {
                const auto comma = schemes_csv.find(',', start);
                const auto token = schemes_csv.substr(
                    start, comma == std::string::npos ? std::string::npos : comma - start);
                if (!token.empty()) {
                    const auto scheme = ncsched::parse_scheme(token);
                    if (!scheme) {
                        std::cerr << "error: unknown scheme '" << token << "'\n";
                        return 1;
                    }
                    config.schemes.push_back(*scheme);
                }
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }

        if (const auto problem = config.validate(); !problem.empty()) {
            std::cerr << "error: " << problem << '\n';
            return 1;
        }

        if (!dump_graph_path.empty() || !dump_trace_path.empty()) {
            const auto real = first_realization(config);
            const ncsched::PowerVector p_max(
                static_cast<std::size_t>(real.instance.scenario.num_transmitters()),
                real.instance.scenario.max_power_watts());
            const auto rates = ncsched::achievable_rate_matrix(real.instance, real.channel, p_max);
            const auto graph = ncsched::build_graph(real.instance, rates);
            if (!dump_graph_path.empty()) {
                std::ofstream out(dump_graph_path);
                if (!out) throw std::runtime_error("cannot open '" + dump_graph_path + "'");
                ncsched::export_graph(out, graph);
                std::cout << "graph with " << graph.vertex_count() << " vertices written to "
                          << dump_graph_path << '\n';
            }
            if (!dump_trace_path.empty()) {
                const auto clique = graph.vertex_count() <= config.solver.exact_limit
                                        ? ncsched::solve_exact(graph, graph.vertex_count())
                                        : ncsched::solve_greedy(graph);
                const auto schedule = ncsched::schedule_from_clique(
                    clique.vertices, graph, real.instance.scenario.num_transmitters());
                const auto report =
                    ncsched::run_ife(real.instance, real.channel, schedule, p_max,
                                     config.solver.ife_epsilon, config.solver.ife_max_iterations);
                std::ofstream out(dump_trace_path);
                if (!out) throw std::runtime_error("cannot open '" + dump_trace_path + "'");
                ncsched::write_power_trace(out, report);
                std::cout << "power trace (" << report.iterations << " iterations) written to "
                          << dump_trace_path << '\n';
            }
            return 0;
        }

        const auto result = ncsched::run_experiment(config);
        ncsched::emit_results(result, config.output_dir);
        std::cout << "wrote " << result.records.size() << " records to " << config.output_dir
                  << "/trials.csv (" << result.total_wall_s << " s)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
