#include "psplan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "psplan/dispatch.hpp"
#include "psplan/planner.hpp"
#include "psplan/sampling.hpp"

namespace psplan {

namespace {

// Objective with implicit equal weights 1/N, so suboptimal designs are scored
// on the same per-year basis as the planner regardless of the dataset's own
// weights.
double equal_weight_cost(const WeightedTimeseries& ts, const TechnologyParams& params,
                         const SystemDesign& design, const DispatchResult& dispatch) {
    double energy = 0.0;
    for (std::size_t t = 0; t < dispatch.size(); ++t) {
        energy += params.baseload.gen_cost * dispatch.gen_baseload_gwh[t] +
                  params.mid_merit.gen_cost * dispatch.gen_mid_merit_gwh[t] +
                  params.peaking.gen_cost * dispatch.gen_peaking_gwh[t] +
                  params.wind.gen_cost * dispatch.gen_wind_gwh[t];
    }
    const double install = params.baseload.install_cost * design.baseload_gw +
                           params.mid_merit.install_cost * design.mid_merit_gw +
                           params.peaking.install_cost * design.peaking_gw +
                           params.wind.install_cost * design.wind_gw;
    return install + kHoursPerYear * energy / static_cast<double>(ts.size());
}

}  // namespace

AdequacyReport adequacy(const WeightedTimeseries& ts_full, const TechnologyParams& params,
                        const SystemDesign& design) {
    const DispatchResult d = dispatch_fixed(ts_full, params, design);
    AdequacyReport report;
    std::map<int, YearAdequacy> by_year;
    for (std::size_t t = 0; t < d.size(); ++t) {
        const double u = d.unserved_gwh[t];
        const bool unmet = u > kShortfallThresholdGwh;
        if (unmet) {
            ++report.hours_unmet;
            report.unserved_energy_gwh += u;
        }
        report.max_shortfall_gw = std::max(report.max_shortfall_gw, u);
        if (ts_full.has_time()) {
            YearAdequacy& y = by_year[ts_full.year_at(t)];
            if (unmet) {
                ++y.hours_unmet;
                y.unserved_energy_gwh += u;
            }
            y.max_shortfall_gw = std::max(y.max_shortfall_gw, u);
        }
    }
    for (auto& [year, rec] : by_year) {
        rec.year = year;
        report.per_year.push_back(rec);
    }
    return report;
}

CostReport extra_system_cost(const WeightedTimeseries& ts_full, const TechnologyParams& params,
                             const SystemDesign& design, const PlanSolution& optimal) {
    const AdequacyReport shortage = adequacy(ts_full, params, design);
    SystemDesign patched = design;
    patched.peaking_gw += shortage.max_shortfall_gw;

    const DispatchResult dispatch = dispatch_fixed(ts_full, params, patched);
    CostReport report;
    report.extra_peaking_added_gw = shortage.max_shortfall_gw;
    report.system_cost = equal_weight_cost(ts_full, params, patched, dispatch);
    report.optimal_cost = optimal.objective_cost;
    report.extra_system_cost = report.system_cost - report.optimal_cost;
    return report;
}

CostReport extra_system_cost(const WeightedTimeseries& ts_full, const TechnologyParams& params,
                             const SystemDesign& design) {
    const PlanSolution optimal = plan_capacity(ts_full.reweighted_equal(), params);
    return extra_system_cost(ts_full, params, design, optimal);
}

CrossYearMatrix cross_year_matrix(const WeightedTimeseries& ts_full,
                                  const TechnologyParams& params) {
    CrossYearMatrix m;
    m.years = ts_full.distinct_years();
    if (m.years.size() < 2)
        throw std::invalid_argument("cross_year_matrix: dataset must span at least two years");

    std::vector<WeightedTimeseries> slices;
    std::vector<SystemDesign> designs;
    slices.reserve(m.years.size());
    designs.reserve(m.years.size());
    for (const int year : m.years) {
        const Subsample sub = individual_year(ts_full, year);
        slices.push_back(sub.apply(ts_full));
        designs.push_back(plan_capacity(slices.back(), params).design);
    }
    m.hours.assign(m.years.size(), std::vector<std::int64_t>(m.years.size(), 0));
    for (std::size_t i = 0; i < m.years.size(); ++i) {
        for (std::size_t j = 0; j < m.years.size(); ++j) {
            m.hours[i][j] = adequacy(slices[j], params, designs[i]).hours_unmet;
        }
    }
    return m;
}

std::vector<std::pair<double, double>> wind_cost_curve(const WeightedTimeseries& ts,
                                                       const TechnologyParams& params,
                                                       const std::vector<double>& wind_grid) {
    std::vector<double> grid = wind_grid;
    std::sort(grid.begin(), grid.end());
    std::vector<std::pair<double, double>> curve;
    curve.reserve(grid.size());
    for (const double x : grid) {
        curve.emplace_back(x, plan_capacity_fixed_wind(ts, params, x).objective_cost);
    }
    return curve;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile: empty input");
    if (!(p >= 0.0 && p <= 100.0)) throw std::invalid_argument("percentile: p outside [0, 100]");
    std::sort(values.begin(), values.end());
    const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

DistributionSummary summarize_distribution(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize_distribution: empty input");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto at = [&](double p) {
        const double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(rank);
        if (lo + 1 >= sorted.size()) return sorted.back();
        const double frac = rank - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
    };
    DistributionSummary s;
    s.p2_5 = at(2.5);
    s.p25 = at(25.0);
    s.p50 = at(50.0);
    s.p75 = at(75.0);
    s.p97_5 = at(97.5);
    s.min = sorted.front();
    s.max = sorted.back();
    double total = 0.0;
    for (const double v : sorted) total += v;
    s.mean = total / static_cast<double>(sorted.size());
    return s;
}

}  // namespace psplan
