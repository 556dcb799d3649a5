#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "psplan/dispatch.hpp"
#include "psplan/types.hpp"

namespace psplan {

enum class SamplerKind { random, importance, individual_year, representative_days };

std::string to_string(SamplerKind kind);
SamplerKind sampler_kind_from_string(const std::string& name);

struct SamplerConfig {
    std::int64_t n_full = 0;    // timesteps in the full dataset
    std::int64_t n_sample = 0;  // timesteps per sample
    std::int64_t n_high = 60;   // forced high-importance timesteps
    std::uint64_t rng_seed = 0;
    SamplerKind kind = SamplerKind::importance;

    void validate() const;  // requires 0 < n_high < n_sample <= n_full
};

// A weighted selection of timesteps out of a full dataset. Indices are kept
// in ascending order; `forced` marks members of the high-importance bin.
struct Subsample {
    std::vector<std::int64_t> indices;
    std::vector<double> weights;
    std::vector<bool> forced;

    std::uint64_t seed = 0;  // seed the draw was derived from
    bool has_stage1 = false;
    SystemDesign stage1_design;  // design that scored the timesteps, if any

    std::size_t size() const { return indices.size(); }

    // Materializes the selection against the dataset it was drawn from.
    WeightedTimeseries apply(const WeightedTimeseries& full) const;

    // Checks ordering, range, weight positivity, and sum(weights) == 1.
    void validate(std::int64_t n_full) const;
};

// n distinct timesteps drawn uniformly, each weighted 1/n.
Subsample random_subsample(const WeightedTimeseries& ts, std::int64_t n, std::uint64_t seed);

// Every timestep of one calendar year, equally weighted. Requires timestamps.
Subsample individual_year(const WeightedTimeseries& ts, int year);

// Indices of the n_high largest importance values, in descending order of
// importance; equal values rank by ascending index.
std::vector<std::int64_t> rank_importance(const ImportanceSeries& imp, std::int64_t n_high);

// Scores each timestep of `ts` given a design; defaults to variable_cost.
using ImportanceFn = std::function<ImportanceSeries(
    const WeightedTimeseries&, const TechnologyParams&, const SystemDesign&)>;

// Two-stage selection: a uniformly random stage-1 sample of cfg.n_sample
// timesteps is planned, every timestep of the full dataset is scored against
// that design, and the final sample combines the cfg.n_high highest scorers
// (weight 1/n_full each) with a uniform draw of n_sample - n_high from the
// rest (weight (n_full - n_high) / (n_full * (n_sample - n_high)) each), so
// the weights total exactly 1. Returns the selection plus the stage-1 solve;
// the caller runs the stage-2 solve, for a total of two plans of size
// n_sample.
std::pair<Subsample, PlanSolution> importance_subsample(const WeightedTimeseries& ts,
                                                        const TechnologyParams& params,
                                                        const SamplerConfig& cfg,
                                                        const ImportanceFn& importance_fn = {});

}  // namespace psplan
