#include "psplan/synth.hpp"

#include <stdexcept>

#include "psplan/rng.hpp"

namespace psplan {

WeightedTimeseries build_dataset(const SynthConfig& cfg) {
    if (cfg.n_years <= 0) throw std::invalid_argument("synth: n_years must be positive");
    const std::int64_t first_day = days_from_civil(cfg.start_year, 1, 1);
    const std::int64_t end_day = days_from_civil(cfg.start_year + cfg.n_years, 1, 1);
    const std::int64_t n_days = end_day - first_day;

    const TemperatureSeries temps = synthesize_temperature(
        first_day, n_days, derive_seed(cfg.seed, hash_label("temperature")), cfg.temperature);
    const TemperatureSeries smoothed = effective_temperature(temps);
    const DemandRegressionParams demand_params =
        cfg.apply_detrend ? detrend(cfg.demand) : cfg.demand;
    const std::vector<double> daily = synthesize_daily_demand(
        demand_params, smoothed, cfg.holidays, derive_seed(cfg.seed, hash_label("demand")));
    std::vector<double> hourly = upsample_hourly(daily, first_day, cfg.profiles);
    std::vector<double> wind =
        synthesize_wind(n_days * 24, derive_seed(cfg.seed, hash_label("wind")), cfg.wind);

    std::vector<std::int64_t> time(hourly.size());
    for (std::size_t t = 0; t < time.size(); ++t)
        time[t] = (first_day * 24 + static_cast<std::int64_t>(t)) * 3600;

    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        std::move(hourly), std::move(wind), std::move(time));
    ts.validate();
    return ts;
}

}  // namespace psplan
