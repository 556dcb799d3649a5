#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "psplan/calendar.hpp"

namespace psplan {

// Daily mean temperatures (deg C) for a contiguous run of days.
struct TemperatureSeries {
    std::int64_t first_day = 0;  // days since 1970-01-01
    std::vector<double> temp_c;

    std::size_t size() const { return temp_c.size(); }
    void validate() const;
};

// Daily-demand regression: level and linear trend in the day number, one
// annual harmonic, linear + quadratic terms in effective temperature,
// additive weekday and holiday shifts, and truncated normal noise:
//   demand(d) = alpha1 + alpha2*d + alpha3*sin(w*d) + alpha4*cos(w*d)
//             + alpha5*Te(d) + alpha6*Te(d)^2 + weekday[dow(d)]
//             + alpha_holiday*[d is holiday] + eps(d)
// with w = 2*pi/365.25 per day and d counted in days since 1970-01-01.
struct DemandRegressionParams {
    double alpha1 = 820.0;   // GWh/day level
    double alpha2 = 0.004;   // GWh/day per day, anthropogenic trend
    double alpha3 = 25.0;    // annual sine
    double alpha4 = 55.0;    // annual cosine (positive: winter peak)
    double alpha5 = -14.0;   // GWh per deg C of effective temperature
    double alpha6 = 0.30;    // GWh per (deg C)^2
    std::array<double, 7> weekday = {40.0, 45.0, 45.0, 45.0, 40.0, 10.0, 0.0};  // Mon..Sun
    double alpha_holiday = -45.0;
    double error_std = 34.2;         // GWh/day
    double error_truncation = 3.0;   // cut the noise at +/- this many stds
    std::int64_t detrend_reference_day = 14975;  // 2011-01-01

    void validate() const;
};

// Hour-of-day demand shares per season; each profile sums to 1.
struct DiurnalProfiles {
    std::array<std::array<double, 24>, 4> shares{};  // indexed by Season

    const std::array<double, 24>& of(Season s) const {
        return shares[static_cast<std::size_t>(s)];
    }
    static DiurnalProfiles flat();  // 1/24 everywhere
    void validate() const;
};

// Seasonal sinusoid plus AR(1) noise for generating daily temperatures.
struct TemperatureModelParams {
    double mean_c = 9.5;
    double amplitude_c = 6.5;    // summer-winter half-swing
    double coldest_day = 15.0;   // day-of-cycle of the minimum (Jan 16 1970 phase)
    double noise_std = 2.5;
    double persistence = 0.85;   // day-to-day noise correlation

    void validate() const;
};

// Exponential smoothing with equal halves: Te(d) = Te(d-1)/2 + T(d)/2,
// starting from Te = T on the first day.
TemperatureSeries effective_temperature(const TemperatureSeries& temps);

TemperatureSeries synthesize_temperature(std::int64_t first_day, std::int64_t n_days,
                                         std::uint64_t seed, const TemperatureModelParams& params);

// Evaluates the regression once per day of `temps` (already smoothed) with a
// per-day noise substream, so the series is independent of evaluation order.
// Results are floored at zero.
std::vector<double> synthesize_daily_demand(const DemandRegressionParams& params,
                                            const TemperatureSeries& temps,
                                            const HolidayCalendar& holidays, std::uint64_t seed);

// Freezes the trend at the reference day: alpha1 <- alpha1 + alpha2 * ref,
// alpha2 <- 0. Inter-year differences of the result are weather-driven only.
DemandRegressionParams detrend(const DemandRegressionParams& params);

// Spreads each daily total over 24 hours using a blend of the day's own
// season profile with the neighbouring one: a day at position p in [0,1)
// within its season takes weight max(0, 0.5-p) from the previous season's
// profile and max(0, p-0.5) from the next season's, so the first day of a
// season (e.g. December 1) blends 50/50 with the season before it and
// mid-season days use their own profile alone. Hourly values sum back to the
// daily total.
std::vector<double> upsample_hourly(const std::vector<double>& daily_gwh, std::int64_t first_day,
                                    const DiurnalProfiles& profiles);

}  // namespace psplan
