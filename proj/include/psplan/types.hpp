#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace psplan {

// Hourly timesteps; installation costs are annualized, so the generation term
// of the objective carries this factor to stay in per-year money units.
inline constexpr double kHoursPerYear = 8760.0;

// Unserved energy below this (GWh) is solver noise, not a real shortage.
inline constexpr double kShortfallThresholdGwh = 1e-9;

// Tolerance on sum(weights) == 1 at file/API boundaries.
inline constexpr double kWeightSumTol = 1e-9;

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TechCost {
    double install_cost = 0.0;  // million GBP per GW-year, annualized
    double gen_cost = 0.0;      // million GBP per GWh
};

// The four technologies, in declaration order: baseload, mid_merit, peaking,
// wind. Declaration order breaks generation-cost ties in the merit order.
struct TechnologyParams {
    TechCost baseload{300.0, 0.005};
    TechCost mid_merit{100.0, 0.035};
    TechCost peaking{50.0, 0.1};
    TechCost wind{100.0, 0.0};

    void validate() const;
};

// Hourly demand (GWh per 1-hour step, numerically GW), wind capacity factor,
// and a per-timestep weight. Timestamps are optional; when present they drive
// calendar-year slicing.
struct WeightedTimeseries {
    std::vector<double> demand_gw;
    std::vector<double> wind_cf;
    std::vector<double> weight;
    std::vector<std::int64_t> time_epoch_s;  // empty, or one entry per timestep

    std::size_t size() const { return demand_gw.size(); }
    bool empty() const { return demand_gw.empty(); }
    bool has_time() const { return !time_epoch_s.empty(); }

    // Calendar year of timestep i (requires timestamps).
    int year_at(std::size_t i) const;
    std::vector<int> distinct_years() const;

    // Throws std::invalid_argument naming the offending row. When
    // require_normalized_weights is set, also checks sum(weight) == 1.
    void validate(bool require_normalized_weights = true) const;

    // Equal weights summing to 1.
    static WeightedTimeseries with_equal_weights(std::vector<double> demand,
                                                 std::vector<double> wind,
                                                 std::vector<std::int64_t> time = {});

    // Row subset with externally supplied weights (timestamps carried along).
    WeightedTimeseries select(const std::vector<std::int64_t>& indices,
                              const std::vector<double>& new_weights) const;

    // Copy with weights reset to 1/N.
    WeightedTimeseries reweighted_equal() const;
};

struct SystemDesign {
    double baseload_gw = 0.0;
    double mid_merit_gw = 0.0;
    double peaking_gw = 0.0;
    double wind_gw = 0.0;

    void validate() const;
    double conventional_total() const { return baseload_gw + mid_merit_gw + peaking_gw; }
};

// Per-timestep generation by technology plus what could not be served.
struct DispatchResult {
    std::vector<double> gen_baseload_gwh;
    std::vector<double> gen_mid_merit_gwh;
    std::vector<double> gen_peaking_gwh;
    std::vector<double> gen_wind_gwh;
    std::vector<double> unserved_gwh;

    std::size_t size() const { return unserved_gwh.size(); }
    double total_unserved() const;
};

struct SolverDiagnostics {
    int iterations = 0;
    std::string status = "optimal";
};

struct PlanSolution {
    SystemDesign design;
    DispatchResult dispatch;
    double objective_cost = 0.0;  // million GBP per year
    SolverDiagnostics diagnostics;
};

}  // namespace psplan
