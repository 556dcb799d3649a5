#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psplan/evaluation.hpp"
#include "psplan/sampling.hpp"
#include "psplan/types.hpp"

namespace psplan {

struct ExperimentEntry {
    SamplerKind kind = SamplerKind::random;
    std::int64_t sample_size = 0;  // nominal compute budget in timesteps
    int replicates = 0;
};

// A sampler-comparison study: which sampler, at which compute budget, how many
// seeds, against which dataset. Parsed from a key-value config file with one
// `run = kind:size:replicates` line per entry.
struct ExperimentPlan {
    std::string dataset_path;
    std::string tech_params_path;  // empty: built-in default costs
    std::uint64_t base_seed = 42;
    bool compute_equivalent = true;  // importance sampler runs two half-size stages
    std::int64_t n_high = 60;
    std::string out_dir = ".";
    std::vector<ExperimentEntry> entries;

    static ExperimentPlan from_config_file(const std::string& path);
    void validate() const;
};

struct ReplicateResult {
    std::string sampler;
    std::int64_t sample_size = 0;  // nominal (as configured)
    int replicate = 0;
    std::uint64_t seed = 0;
    long long effective_compute = 0;  // planner timesteps actually consumed
    SystemDesign design;
    double objective_cost = 0.0;  // estimate's own (subsample) objective
    std::int64_t hours_unmet = 0;
    double unserved_energy_gwh = 0.0;
    double max_shortfall_gw = 0.0;
    double extra_system_cost = 0.0;
    std::string status = "ok";
    double wall_ms = 0.0;  // reported only in timings.csv

    bool ok() const { return status == "ok"; }
};

struct ExperimentResult {
    std::vector<ReplicateResult> rows;
    PlanSolution optimal;  // full-dataset optimum at equal weights
    std::int64_t n_full = 0;
};

// Deterministic per-replicate seed: the base seed chained through the sampler
// name hash, the nominal size, and the replicate number.
std::uint64_t replicate_seed(std::uint64_t base, SamplerKind kind, std::int64_t size,
                             int replicate);

// Runs every replicate (optionally across `jobs` threads), scoring each
// design against the full dataset. Replicate failures are recorded in their
// row's status and do not stop the run. Output order and content depend only
// on the inputs, never on `jobs` or timing.
ExperimentResult run_experiment(const ExperimentPlan& plan, const WeightedTimeseries& ts,
                                const TechnologyParams& params, int jobs = 1);

struct SummaryRow {
    std::string sampler;
    std::int64_t sample_size = 0;
    std::string metric;
    int count = 0;
    DistributionSummary stats;
    double bias = 0.0;  // median minus the full-dataset reference
};

// Percentile tables of capacities, cost, and shortage metrics per
// (sampler, size) group, with bias against the full-dataset optimum.
std::vector<SummaryRow> summarize_experiment(const ExperimentResult& result);

// Rebuilds an ExperimentResult from a previous run's results.csv and meta.json
// (the reference optimum comes from the meta file; its dispatch is not kept).
ExperimentResult load_experiment_output(const std::string& results_csv_path,
                                        const std::string& meta_json_path);

void write_results_csv(const ExperimentResult& result, const std::string& path);
void write_timings_csv(const ExperimentResult& result, const std::string& path);
std::string summary_csv(const std::vector<SummaryRow>& rows);
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);
void write_meta_json(const ExperimentPlan& plan, const ExperimentResult& result,
                     const std::string& path);

}  // namespace psplan
