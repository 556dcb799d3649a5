#include "psplan/demand_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "psplan/rng.hpp"

namespace psplan {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDaysPerYear = 365.25;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void TemperatureSeries::validate() const {
    require(!temp_c.empty(), "temperature series: empty");
    for (std::size_t i = 0; i < temp_c.size(); ++i) {
        require(std::isfinite(temp_c[i]),
                "temperature series day " + std::to_string(i) + ": value must be finite");
    }
}

void DemandRegressionParams::validate() const {
    const double coeffs[] = {alpha1, alpha2, alpha3, alpha4, alpha5, alpha6, alpha_holiday};
    for (const double c : coeffs) require(std::isfinite(c), "demand params: coefficients must be finite");
    for (const double w : weekday) require(std::isfinite(w), "demand params: weekday shifts must be finite");
    require(std::isfinite(error_std) && error_std >= 0.0, "demand params: error_std must be >= 0");
    require(std::isfinite(error_truncation) && error_truncation > 0.0,
            "demand params: error_truncation must be > 0");
}

DiurnalProfiles DiurnalProfiles::flat() {
    DiurnalProfiles p;
    for (auto& season : p.shares) season.fill(1.0 / 24.0);
    return p;
}

void DiurnalProfiles::validate() const {
    const char* names[] = {"DJF", "MAM", "JJA", "SON"};
    for (std::size_t s = 0; s < 4; ++s) {
        double sum = 0.0;
        for (const double v : shares[s]) {
            require(std::isfinite(v) && v >= 0.0,
                    std::string("diurnal profile ") + names[s] + ": shares must be >= 0");
            sum += v;
        }
        require(std::abs(sum - 1.0) <= 1e-9,
                std::string("diurnal profile ") + names[s] + ": shares sum to " +
                    std::to_string(sum) + ", expected 1");
    }
}

void TemperatureModelParams::validate() const {
    require(std::isfinite(mean_c) && std::isfinite(amplitude_c) && std::isfinite(coldest_day),
            "temperature params: values must be finite");
    require(std::isfinite(noise_std) && noise_std >= 0.0, "temperature params: noise_std must be >= 0");
    require(std::isfinite(persistence) && persistence >= 0.0 && persistence < 1.0,
            "temperature params: persistence must lie in [0, 1)");
}

TemperatureSeries effective_temperature(const TemperatureSeries& temps) {
    temps.validate();
    TemperatureSeries out;
    out.first_day = temps.first_day;
    out.temp_c.resize(temps.size());
    out.temp_c[0] = temps.temp_c[0];
    for (std::size_t i = 1; i < temps.size(); ++i) {
        out.temp_c[i] = 0.5 * out.temp_c[i - 1] + 0.5 * temps.temp_c[i];
    }
    return out;
}

TemperatureSeries synthesize_temperature(std::int64_t first_day, std::int64_t n_days,
                                         std::uint64_t seed,
                                         const TemperatureModelParams& params) {
    params.validate();
    require(n_days > 0, "synthesize_temperature: n_days must be positive");
    TemperatureSeries out;
    out.first_day = first_day;
    out.temp_c.reserve(static_cast<std::size_t>(n_days));
    Rng rng(seed);
    const double blend = std::sqrt(1.0 - params.persistence * params.persistence);
    double noise = params.noise_std > 0.0 ? params.noise_std * rng.normal() : 0.0;
    for (std::int64_t d = 0; d < n_days; ++d) {
        const double day = static_cast<double>(first_day + d);
        const double seasonal =
            params.mean_c -
            params.amplitude_c * std::cos(kTwoPi * (day - params.coldest_day) / kDaysPerYear);
        out.temp_c.push_back(seasonal + noise);
        if (params.noise_std > 0.0)
            noise = params.persistence * noise + blend * params.noise_std * rng.normal();
    }
    return out;
}

std::vector<double> synthesize_daily_demand(const DemandRegressionParams& params,
                                            const TemperatureSeries& temps,
                                            const HolidayCalendar& holidays, std::uint64_t seed) {
    params.validate();
    temps.validate();
    std::vector<double> out;
    out.reserve(temps.size());
    for (std::size_t i = 0; i < temps.size(); ++i) {
        const std::int64_t day = temps.first_day + static_cast<std::int64_t>(i);
        const double d = static_cast<double>(day);
        const double te = temps.temp_c[i];
        double value = params.alpha1 + params.alpha2 * d +
                       params.alpha3 * std::sin(kTwoPi * d / kDaysPerYear) +
                       params.alpha4 * std::cos(kTwoPi * d / kDaysPerYear) +
                       params.alpha5 * te + params.alpha6 * te * te +
                       params.weekday[static_cast<std::size_t>(weekday_from_days(day))];
        if (holidays.is_holiday(day)) value += params.alpha_holiday;
        if (params.error_std > 0.0) {
            // Per-day substream: the draw for a date never depends on which
            // other dates were generated alongside it.
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(day)));
            double z = rng.normal();
            while (std::abs(z) > params.error_truncation) z = rng.normal();
            value += params.error_std * z;
        }
        out.push_back(std::max(0.0, value));
    }
    return out;
}

DemandRegressionParams detrend(const DemandRegressionParams& params) {
    DemandRegressionParams out = params;
    out.alpha1 = params.alpha1 + params.alpha2 * static_cast<double>(params.detrend_reference_day);
    out.alpha2 = 0.0;
    return out;
}

std::vector<double> upsample_hourly(const std::vector<double>& daily_gwh, std::int64_t first_day,
                                    const DiurnalProfiles& profiles) {
    profiles.validate();
    std::vector<double> out;
    out.reserve(daily_gwh.size() * 24);
    for (std::size_t i = 0; i < daily_gwh.size(); ++i) {
        const std::int64_t day = first_day + static_cast<std::int64_t>(i);
        const SeasonPosition pos = season_position(civil_from_days(day));
        const double p = static_cast<double>(pos.day_index) / static_cast<double>(pos.season_len);
        const double w_prev = std::max(0.0, 0.5 - p);
        const double w_next = std::max(0.0, p - 0.5);
        const double w_own = 1.0 - w_prev - w_next;
        const auto season_idx = static_cast<std::size_t>(pos.season);
        const auto& own = profiles.shares[season_idx];
        const auto& prev = profiles.shares[(season_idx + 3) % 4];
        const auto& next = profiles.shares[(season_idx + 1) % 4];
        for (std::size_t h = 0; h < 24; ++h) {
            const double share = w_prev * prev[h] + w_own * own[h] + w_next * next[h];
            out.push_back(daily_gwh[i] * share);
        }
    }
    return out;
}

}  // namespace psplan
