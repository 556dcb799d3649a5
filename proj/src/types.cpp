#include "psplan/types.hpp"

#include <algorithm>
#include <cmath>

#include "psplan/calendar.hpp"

namespace psplan {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void TechnologyParams::validate() const {
    const TechCost* costs[] = {&baseload, &mid_merit, &peaking, &wind};
    const char* names[] = {"baseload", "mid_merit", "peaking", "wind"};
    for (int i = 0; i < 4; ++i) {
        require(std::isfinite(costs[i]->install_cost) && costs[i]->install_cost >= 0.0,
                std::string("technology ") + names[i] + ": install_cost must be finite and >= 0");
        require(std::isfinite(costs[i]->gen_cost) && costs[i]->gen_cost >= 0.0,
                std::string("technology ") + names[i] + ": gen_cost must be finite and >= 0");
    }
}

int WeightedTimeseries::year_at(std::size_t i) const {
    if (!has_time()) throw std::invalid_argument("timeseries has no timestamps");
    return civil_from_days(time_epoch_s[i] / 86400 - (time_epoch_s[i] % 86400 < 0 ? 1 : 0)).year;
}

std::vector<int> WeightedTimeseries::distinct_years() const {
    std::vector<int> years;
    for (std::size_t i = 0; i < size(); ++i) {
        const int y = year_at(i);
        if (years.empty() || years.back() != y) {
            if (std::find(years.begin(), years.end(), y) == years.end()) years.push_back(y);
        }
    }
    std::sort(years.begin(), years.end());
    return years;
}

void WeightedTimeseries::validate(bool require_normalized_weights) const {
    const std::size_t n = demand_gw.size();
    require(n > 0, "timeseries: no data rows");
    require(wind_cf.size() == n && weight.size() == n,
            "timeseries: component series have unequal lengths");
    require(time_epoch_s.empty() || time_epoch_s.size() == n,
            "timeseries: timestamp column has wrong length");
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row = "row " + std::to_string(i);
        require(std::isfinite(demand_gw[i]) && demand_gw[i] >= 0.0,
                "timeseries " + row + ": demand must be finite and >= 0");
        require(std::isfinite(wind_cf[i]) && wind_cf[i] >= 0.0 && wind_cf[i] <= 1.0,
                "timeseries " + row + ": wind_cf must lie in [0, 1]");
        require(std::isfinite(weight[i]) && weight[i] > 0.0,
                "timeseries " + row + ": weight must be finite and > 0");
        wsum += weight[i];
    }
    if (require_normalized_weights) {
        require(std::abs(wsum - 1.0) <= kWeightSumTol,
                "timeseries: weights sum to " + std::to_string(wsum) + ", expected 1");
    }
    if (has_time()) {
        for (std::size_t i = 1; i < n; ++i) {
            require(time_epoch_s[i] > time_epoch_s[i - 1],
                    "timeseries row " + std::to_string(i) + ": timestamps must be strictly increasing");
        }
    }
}

WeightedTimeseries WeightedTimeseries::with_equal_weights(std::vector<double> demand,
                                                          std::vector<double> wind,
                                                          std::vector<std::int64_t> time) {
    WeightedTimeseries ts;
    ts.demand_gw = std::move(demand);
    ts.wind_cf = std::move(wind);
    ts.time_epoch_s = std::move(time);
    const std::size_t n = ts.demand_gw.size();
    ts.weight.assign(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
    return ts;
}

WeightedTimeseries WeightedTimeseries::select(const std::vector<std::int64_t>& indices,
                                              const std::vector<double>& new_weights) const {
    if (indices.size() != new_weights.size())
        throw std::invalid_argument("select: indices and weights differ in length");
    WeightedTimeseries out;
    out.demand_gw.reserve(indices.size());
    out.wind_cf.reserve(indices.size());
    out.weight = new_weights;
    if (has_time()) out.time_epoch_s.reserve(indices.size());
    for (const std::int64_t idx : indices) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= size())
            throw std::invalid_argument("select: index " + std::to_string(idx) + " out of range");
        out.demand_gw.push_back(demand_gw[static_cast<std::size_t>(idx)]);
        out.wind_cf.push_back(wind_cf[static_cast<std::size_t>(idx)]);
        if (has_time()) out.time_epoch_s.push_back(time_epoch_s[static_cast<std::size_t>(idx)]);
    }
    return out;
}

WeightedTimeseries WeightedTimeseries::reweighted_equal() const {
    WeightedTimeseries out = *this;
    const std::size_t n = out.size();
    out.weight.assign(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
    return out;
}

void SystemDesign::validate() const {
    const double caps[] = {baseload_gw, mid_merit_gw, peaking_gw, wind_gw};
    const char* names[] = {"baseload_gw", "mid_merit_gw", "peaking_gw", "wind_gw"};
    for (int i = 0; i < 4; ++i) {
        require(std::isfinite(caps[i]) && caps[i] >= 0.0,
                std::string("design: ") + names[i] + " must be finite and >= 0");
    }
}

double DispatchResult::total_unserved() const {
    double s = 0.0;
    for (const double u : unserved_gwh) s += u;
    return s;
}

}  // namespace psplan
