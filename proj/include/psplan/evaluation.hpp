#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "psplan/types.hpp"

namespace psplan {

struct YearAdequacy {
    int year = 0;
    std::int64_t hours_unmet = 0;
    double unserved_energy_gwh = 0.0;
    double max_shortfall_gw = 0.0;
};

// Shortage statistics for a fixed design run against a dataset. A timestep
// counts as unmet when its unserved energy exceeds the shortage threshold.
struct AdequacyReport {
    std::int64_t hours_unmet = 0;
    double unserved_energy_gwh = 0.0;
    double max_shortfall_gw = 0.0;
    std::vector<YearAdequacy> per_year;  // present when the dataset has timestamps
};

struct CostReport {
    double system_cost = 0.0;        // £m/yr, design patched with extra peaking
    double optimal_cost = 0.0;       // £m/yr, full-dataset optimum
    double extra_system_cost = 0.0;  // system_cost - optimal_cost
    double extra_peaking_added_gw = 0.0;
};

// Dispatches the design over the whole dataset and aggregates shortfalls.
// Weights play no role here: every timestep counts once.
AdequacyReport adequacy(const WeightedTimeseries& ts_full, const TechnologyParams& params,
                        const SystemDesign& design);

// Cost penalty of running `design` instead of the dataset optimum: the design
// first gets enough extra peaking capacity to wipe out its worst shortfall,
// then its cost is computed with equal timestep weights and compared against
// plan_capacity on the same equally weighted dataset. The overload taking
// `optimal` reuses a previously computed optimum.
CostReport extra_system_cost(const WeightedTimeseries& ts_full, const TechnologyParams& params,
                             const SystemDesign& design);
CostReport extra_system_cost(const WeightedTimeseries& ts_full, const TechnologyParams& params,
                             const SystemDesign& design, const PlanSolution& optimal);

// hours[i][j] = unmet hours when year[i]'s optimal design serves year[j]'s
// timesteps. The diagonal is zero by construction.
struct CrossYearMatrix {
    std::vector<int> years;
    std::vector<std::vector<std::int64_t>> hours;
};
CrossYearMatrix cross_year_matrix(const WeightedTimeseries& ts_full,
                                  const TechnologyParams& params);

// Optimal system cost at each prescribed wind capacity, sorted by capacity.
std::vector<std::pair<double, double>> wind_cost_curve(const WeightedTimeseries& ts,
                                                       const TechnologyParams& params,
                                                       const std::vector<double>& wind_grid);

// Order statistics via linear interpolation between ranks: the p-th percentile
// sits at fractional rank p/100 * (n-1) of the sorted values.
struct DistributionSummary {
    double p2_5 = 0.0;
    double p25 = 0.0;
    double p50 = 0.0;
    double p75 = 0.0;
    double p97_5 = 0.0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};
DistributionSummary summarize_distribution(const std::vector<double>& values);
double percentile(std::vector<double> values, double p);  // p in [0, 100]

}  // namespace psplan
