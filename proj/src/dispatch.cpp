#include "psplan/dispatch.hpp"

#include <algorithm>

namespace psplan {

namespace {

const TechCost& tech_cost(const TechnologyParams& params, int tech) {
    switch (tech) {
        case 0: return params.baseload;
        case 1: return params.mid_merit;
        case 2: return params.peaking;
        default: return params.wind;
    }
}

double tech_capacity(const SystemDesign& design, int tech) {
    switch (tech) {
        case 0: return design.baseload_gw;
        case 1: return design.mid_merit_gw;
        case 2: return design.peaking_gw;
        default: return design.wind_gw;
    }
}

std::vector<double>& tech_series(DispatchResult& out, int tech) {
    switch (tech) {
        case 0: return out.gen_baseload_gwh;
        case 1: return out.gen_mid_merit_gwh;
        case 2: return out.gen_peaking_gwh;
        default: return out.gen_wind_gwh;
    }
}

}  // namespace

std::array<int, 4> merit_order(const TechnologyParams& params) {
    std::array<int, 4> order = {0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return tech_cost(params, a).gen_cost < tech_cost(params, b).gen_cost;
    });
    return order;
}

DispatchResult dispatch_fixed(const WeightedTimeseries& ts, const TechnologyParams& params,
                              const SystemDesign& design) {
    design.validate();
    params.validate();
    const std::size_t n = ts.size();
    DispatchResult out;
    out.gen_baseload_gwh.assign(n, 0.0);
    out.gen_mid_merit_gwh.assign(n, 0.0);
    out.gen_peaking_gwh.assign(n, 0.0);
    out.gen_wind_gwh.assign(n, 0.0);
    out.unserved_gwh.assign(n, 0.0);

    const std::array<int, 4> order = merit_order(params);
    for (std::size_t t = 0; t < n; ++t) {
        double remaining = ts.demand_gw[t];
        for (const int tech : order) {
            const double avail =
                tech == 3 ? design.wind_gw * ts.wind_cf[t] : tech_capacity(design, tech);
            const double g = std::min(remaining, avail);
            if (g > 0.0) {
                tech_series(out, tech)[t] = g;
                remaining -= g;
            }
        }
        out.unserved_gwh[t] = remaining;
    }
    return out;
}

ImportanceSeries variable_cost(const WeightedTimeseries& ts, const TechnologyParams& params,
                               const SystemDesign& design) {
    const DispatchResult d = dispatch_fixed(ts, params, design);
    ImportanceSeries imp(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) {
        imp[t] = params.baseload.gen_cost * d.gen_baseload_gwh[t] +
                 params.mid_merit.gen_cost * d.gen_mid_merit_gwh[t] +
                 params.peaking.gen_cost * (d.gen_peaking_gwh[t] + d.unserved_gwh[t]);
    }
    return imp;
}

double objective_value(const WeightedTimeseries& ts, const TechnologyParams& params,
                       const SystemDesign& design, const DispatchResult& dispatch) {
    double install = params.baseload.install_cost * design.baseload_gw +
                     params.mid_merit.install_cost * design.mid_merit_gw +
                     params.peaking.install_cost * design.peaking_gw +
                     params.wind.install_cost * design.wind_gw;
    double energy = 0.0;
    for (std::size_t t = 0; t < dispatch.size(); ++t) {
        energy += ts.weight[t] * (params.baseload.gen_cost * dispatch.gen_baseload_gwh[t] +
                                  params.mid_merit.gen_cost * dispatch.gen_mid_merit_gwh[t] +
                                  params.peaking.gen_cost * dispatch.gen_peaking_gwh[t] +
                                  params.wind.gen_cost * dispatch.gen_wind_gwh[t]);
    }
    return install + kHoursPerYear * energy;
}

}  // namespace psplan
