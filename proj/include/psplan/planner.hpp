#pragma once

#include "psplan/types.hpp"

namespace psplan {

// Thread-local counters for capacity-planning work, used by the experiment
// harness to report effective compute per replicate. Every plan_capacity /
// plan_capacity_fixed_wind call bumps plan_calls and adds the input length to
// plan_timesteps.
struct SolveTally {
    long long plan_calls = 0;
    long long plan_timesteps = 0;
};
SolveTally& solve_tally();

// Zeroes the tally on construction for a scoped measurement; on destruction
// the scope's counts are folded back into the enclosing tally, so outer
// measurements still see all work done inside.
class ScopedSolveTally {
public:
    ScopedSolveTally() : saved_(solve_tally()) { solve_tally() = SolveTally{}; }
    ~ScopedSolveTally() {
        const SolveTally inner = solve_tally();
        solve_tally().plan_calls = saved_.plan_calls + inner.plan_calls;
        solve_tally().plan_timesteps = saved_.plan_timesteps + inner.plan_timesteps;
    }
    SolveTally current() const { return solve_tally(); }

private:
    SolveTally saved_;
};

// Minimizes installed-capacity plus weighted generation cost over all four
// capacities and the dispatch, with demand met exactly in every timestep.
// Equivalent to the linear program
//   min  sum_i install_i * cap_i + 8760 * sum_t weight_t * sum_i gen_i * gen_it
//   s.t. gen_it <= cap_i            (conventional i)
//        gen_wind,t <= cap_wind * wind_cf_t
//        sum_i gen_it = demand_t,   all variables >= 0
// solved by screening-curve analysis of the residual-demand duration curve
// nested inside convex line searches over the wind capacity (and, when wind's
// generation cost exceeds some conventional one, over the pre-wind capacity
// block). Weights may sum to anything positive; only relative weights affect
// the optimal design.
PlanSolution plan_capacity(const WeightedTimeseries& ts, const TechnologyParams& params);

// Same problem with the wind capacity pinned to wind_gw.
PlanSolution plan_capacity_fixed_wind(const WeightedTimeseries& ts, const TechnologyParams& params,
                                      double wind_gw);

}  // namespace psplan
