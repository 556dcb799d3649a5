#pragma once

#include <array>
#include <vector>

#include "psplan/types.hpp"

namespace psplan {

// Per-timestep importance values, one per timestep of the full dataset.
using ImportanceSeries = std::vector<double>;

// Technology indices 0=baseload, 1=mid_merit, 2=peaking, 3=wind, sorted by
// ascending generation cost; ties keep declaration order. Greedy dispatch in
// this order is cost-minimizing for any nonnegative generation costs.
std::array<int, 4> merit_order(const TechnologyParams& params);

// Fills demand timestep by timestep in merit order. Conventional technologies
// offer their full capacity; wind offers wind_gw * wind_cf[t]. Whatever the
// stack cannot cover is reported as unserved.
DispatchResult dispatch_fixed(const WeightedTimeseries& ts, const TechnologyParams& params,
                              const SystemDesign& design);

// Conventional generation cost of each timestep under merit-order dispatch:
// sum of gen_cost * generation over baseload/mid-merit/peaking, with unserved
// energy priced at the peaking rate (capacity shortfalls behave like extra
// peaking demand). Wind output is excluded.
ImportanceSeries variable_cost(const WeightedTimeseries& ts, const TechnologyParams& params,
                               const SystemDesign& design);

// Annualized system cost of a (design, dispatch) pair:
//   sum_i install_cost_i * cap_i  +  8760 * sum_t weight_t * sum_i gen_cost_i * gen_it
double objective_value(const WeightedTimeseries& ts, const TechnologyParams& params,
                       const SystemDesign& design, const DispatchResult& dispatch);

}  // namespace psplan
