#pragma once

#include <cstdint>

#include "psplan/calendar.hpp"
#include "psplan/demand_model.hpp"
#include "psplan/types.hpp"
#include "psplan/wind_model.hpp"

namespace psplan {

struct SynthConfig {
    int start_year = 2006;
    int n_years = 10;
    std::uint64_t seed = 1;
    bool apply_detrend = true;
    DemandRegressionParams demand;
    DiurnalProfiles profiles = DiurnalProfiles::flat();
    TemperatureModelParams temperature;
    WindModelParams wind;
    HolidayCalendar holidays;
};

// Whole-year synthetic dataset: daily temperatures -> effective temperature
// -> daily demand -> hourly demand via the seasonal profiles, plus an hourly
// wind series. Demand, temperature, and wind use independent substreams of
// the seed. Timestamps are hourly UTC; weights are equal.
WeightedTimeseries build_dataset(const SynthConfig& cfg);

}  // namespace psplan
