#include "psplan/wind_model.hpp"

#include <cmath>
#include <stdexcept>

#include "psplan/rng.hpp"

namespace psplan {

void WindModelParams::validate() const {
    if (!(std::isfinite(mean_cf) && mean_cf > 0.0 && mean_cf < 1.0))
        throw std::invalid_argument("wind params: mean_cf must lie in (0, 1)");
    if (!(std::isfinite(persistence) && persistence >= 0.0 && persistence < 1.0))
        throw std::invalid_argument("wind params: persistence must lie in [0, 1)");
    if (!(std::isfinite(spread) && spread >= 0.0 && spread <= 1.0))
        throw std::invalid_argument("wind params: spread must lie in [0, 1]");
}

std::vector<double> synthesize_wind(std::int64_t n_hours, std::uint64_t seed,
                                    const WindModelParams& params) {
    params.validate();
    if (n_hours <= 0) throw std::invalid_argument("synthesize_wind: n_hours must be positive");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_hours));
    const double theta = (1.0 - params.mean_cf) / params.mean_cf;
    const double base = (1.0 - params.spread) * params.mean_cf;
    Rng rng(seed);
    const double blend = std::sqrt(1.0 - params.persistence * params.persistence);
    double z = rng.normal();
    for (std::int64_t t = 0; t < n_hours; ++t) {
        const double u = 0.5 * std::erfc(-z * 0.70710678118654752440);  // Phi(z)
        out.push_back(base + params.spread * std::pow(u, theta));
        z = params.persistence * z + blend * rng.normal();
    }
    return out;
}

}  // namespace psplan
