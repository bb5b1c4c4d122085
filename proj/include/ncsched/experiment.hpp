/*
 * Monte Carlo experiment driver: sweeps one scenario parameter, runs every
 * scheme on the same seeded realization per (sweep point, trial), aggregates
 * throughput statistics and writes machine-readable results.
 *
 * Trial seeds derive from (master_seed, point index, trial index), so output
 * is identical for any worker-thread count.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncsched/model.hpp"
#include "ncsched/scheduler.hpp"

namespace ncsched {

enum class CachingLevelMode { ThreeLevel, TwoLevel, NoCaching };

const char* caching_level_name(CachingLevelMode mode);
std::optional<CachingLevelMode> parse_caching_level(const std::string& name);
std::optional<SchemeKind> parse_scheme(const std::string& name);

// Empties caches according to the caching level (two-level drops the D2D
// caches, no-caching drops all) and re-derives the user classification.
Instance apply_caching_level(Instance instance, CachingLevelMode mode);

enum class SweepAxis { NumUsers, FronthaulCapacity, CachingLevel };

const char* sweep_axis_name(SweepAxis axis);

struct ExperimentConfig {
    Scenario base;
    CachingLevelMode base_caching_level = CachingLevelMode::ThreeLevel;
    SweepAxis axis = SweepAxis::NumUsers;
    std::vector<double> numeric_values;               // NumUsers / FronthaulCapacity axes
    std::vector<CachingLevelMode> caching_values;     // CachingLevel axis
    std::vector<SchemeKind> schemes;
    int trials = 100;
    std::uint64_t master_seed = 1;
    SolverConfig solver;
    int threads = 0;  // 0: hardware concurrency
    std::string output_dir = "results";

    int num_points() const {
        return axis == SweepAxis::CachingLevel ? static_cast<int>(caching_values.size())
                                               : static_cast<int>(numeric_values.size());
    }

    std::string validate() const;  // empty when valid
};

struct TrialRecord {
    int trial = 0;
    int point_index = 0;
    std::string sweep_label;
    SchemeKind scheme = SchemeKind::Proposed;
    double throughput_bps = 0.0;
    int outer_iterations = 0;
    SolverTag solver = SolverTag::Exact;
    // Measured per-trial time. Reported in summary.json only; trials.csv
    // keeps its wall_s column deterministic so identical seeds give
    // byte-identical files.
    double wall_s = 0.0;
};

struct AggregateCell {
    int point_index = 0;
    std::string sweep_label;
    SchemeKind scheme = SchemeKind::Proposed;
    int trials = 0;
    double mean_throughput_bps = 0.0;
    double stderr_throughput_bps = 0.0;
    double mean_wall_s = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialRecord> records;      // ordered by (point, trial, scheme)
    std::vector<AggregateCell> aggregates;  // ordered by (point, scheme)
    double total_wall_s = 0.0;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes trials.csv and summary.json under output_dir (created if missing).
void emit_results(const ExperimentResult& result, const std::string& output_dir);

// Flat JSON document mirroring ExperimentConfig; unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// fig2a / fig2b / fig4 experiment presets.
std::optional<ExperimentConfig> preset_config(const std::string& name);

}  // namespace ncsched
