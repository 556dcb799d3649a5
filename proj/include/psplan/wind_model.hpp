#pragma once

#include <cstdint>
#include <vector>

namespace psplan {

// Stochastic hourly capacity-factor generator. A latent standard-normal AR(1)
// process z (lag-1 correlation = persistence) is pushed through the normal
// CDF to a uniform u, then shaped as
//   cf = (1 - spread) * mean_cf + spread * u^((1 - mean_cf) / mean_cf)
// which keeps the long-run mean at exactly mean_cf for every spread: the
// power transform of a uniform has mean mean_cf by construction, and spread
// only mixes it with the constant mean. spread = 0 gives a constant series.
struct WindModelParams {
    double mean_cf = 0.33;
    double persistence = 0.985;  // hour-to-hour correlation of the latent process
    double spread = 1.0;         // 0 = constant, 1 = full variability

    void validate() const;  // 0 < mean_cf < 1, 0 <= persistence < 1, 0 <= spread <= 1
};

std::vector<double> synthesize_wind(std::int64_t n_hours, std::uint64_t seed,
                                    const WindModelParams& params);

}  // namespace psplan
