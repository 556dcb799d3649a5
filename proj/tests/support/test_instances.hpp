#pragma once

// Seeded random problem instances shared by the unit and acceptance tests.

#include <cstdint>
#include <vector>

#include "psplan/rng.hpp"
#include "psplan/types.hpp"

namespace testsupport {

// Short weighted series with demands in [0, 50] GW and arbitrary normalized
// weights. No timestamps: planning does not need them.
inline psplan::WeightedTimeseries random_series(psplan::Rng& rng, int n_steps,
                                                bool skewed_weights = false) {
    std::vector<double> demand, wind, weight;
    double total = 0.0;
    for (int t = 0; t < n_steps; ++t) {
        demand.push_back(50.0 * rng.uniform01());
        wind.push_back(rng.uniform01());
        const double w = skewed_weights ? rng.uniform01() * rng.uniform01() + 1e-4 : 1.0;
        weight.push_back(w);
        total += w;
    }
    for (double& w : weight) w /= total;
    psplan::WeightedTimeseries ts;
    ts.demand_gw = std::move(demand);
    ts.wind_cf = std::move(wind);
    ts.weight = std::move(weight);
    return ts;
}

// Costs spread far enough apart that optima are numerically well separated:
// install costs in [1, 400] GBPm/GWyr, generation costs in [0.001, 0.2]
// GBPm/GWh. `wind_gen_cost_too` makes wind's running cost positive as well,
// exercising the general merit-order path.
inline psplan::TechnologyParams random_params(psplan::Rng& rng, bool wind_gen_cost_too = false) {
    psplan::TechnologyParams p;
    auto draw_install = [&rng]() { return 1.0 + 399.0 * rng.uniform01(); };
    auto draw_gen = [&rng]() { return 0.001 + 0.199 * rng.uniform01(); };
    p.baseload = {draw_install(), draw_gen()};
    p.mid_merit = {draw_install(), draw_gen()};
    p.peaking = {draw_install(), draw_gen()};
    p.wind = {draw_install(), wind_gen_cost_too ? 0.15 * rng.uniform01() : 0.0};
    return p;
}

}  // namespace testsupport
