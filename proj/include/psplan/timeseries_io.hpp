#pragma once

#include <string>

#include "psplan/sampling.hpp"
#include "psplan/types.hpp"

namespace psplan {

// Shortest decimal representation that parses back to the same double; used
// for every number we write, so output files are byte-stable.
std::string format_double(double value);

// Dataset CSV: header `time,demand_gw,wind_cf`, one hourly row per timestep,
// ISO 8601 UTC timestamps, strictly increasing in one-hour steps. Loading
// assigns equal weights 1/N; weights are never stored in dataset files
// (subsample files carry them instead). Validation errors name the row.
WeightedTimeseries load_timeseries_csv(const std::string& path);
void save_timeseries_csv(const WeightedTimeseries& ts, const std::string& path);

// Subsample CSV: header `index,weight,forced`.
Subsample load_subsample_csv(const std::string& path);
void save_subsample_csv(const Subsample& sub, const std::string& path);

}  // namespace psplan
