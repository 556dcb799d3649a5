#include "psplan/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "psplan/planner.hpp"
#include "psplan/rng.hpp"

namespace psplan {

std::string to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::random: return "random";
        case SamplerKind::importance: return "importance";
        case SamplerKind::individual_year: return "individual_year";
        case SamplerKind::representative_days: return "representative_days";
    }
    return "unknown";
}

SamplerKind sampler_kind_from_string(const std::string& name) {
    if (name == "random") return SamplerKind::random;
    if (name == "importance") return SamplerKind::importance;
    if (name == "individual_year") return SamplerKind::individual_year;
    if (name == "representative_days") return SamplerKind::representative_days;
    throw std::invalid_argument("unknown sampler kind '" + name + "'");
}

void SamplerConfig::validate() const {
    if (n_full <= 0) throw std::invalid_argument("sampler config: n_full must be positive");
    if (!(0 < n_high && n_high < n_sample && n_sample <= n_full))
        throw std::invalid_argument("sampler config: need 0 < n_high < n_sample <= n_full");
}

WeightedTimeseries Subsample::apply(const WeightedTimeseries& full) const {
    return full.select(indices, weights);
}

void Subsample::validate(std::int64_t n_full) const {
    if (indices.size() != weights.size() || indices.size() != forced.size())
        throw std::invalid_argument("subsample: component lengths differ");
    if (indices.empty()) throw std::invalid_argument("subsample: empty");
    double wsum = 0.0;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= n_full)
            throw std::invalid_argument("subsample: index " + std::to_string(indices[i]) +
                                        " out of range");
        if (i > 0 && indices[i] <= indices[i - 1])
            throw std::invalid_argument("subsample: indices must be strictly increasing");
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw std::invalid_argument("subsample: weights must be finite and > 0");
        wsum += weights[i];
    }
    if (std::abs(wsum - 1.0) > kWeightSumTol)
        throw std::invalid_argument("subsample: weights sum to " + std::to_string(wsum) +
                                    ", expected 1");
}

Subsample random_subsample(const WeightedTimeseries& ts, std::int64_t n, std::uint64_t seed) {
    const auto n_full = static_cast<std::int64_t>(ts.size());
    if (n <= 0 || n > n_full)
        throw std::invalid_argument("random_subsample: need 0 < n <= dataset size");
    Rng rng(seed);
    Subsample out;
    out.indices = rng.sample_without_replacement(n_full, n);
    out.weights.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    out.forced.assign(static_cast<std::size_t>(n), false);
    out.seed = seed;
    return out;
}

Subsample individual_year(const WeightedTimeseries& ts, int year) {
    if (!ts.has_time())
        throw std::invalid_argument("individual_year: dataset has no timestamps");
    Subsample out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts.year_at(i) == year) out.indices.push_back(static_cast<std::int64_t>(i));
    }
    if (out.indices.empty())
        throw std::invalid_argument("individual_year: year " + std::to_string(year) +
                                    " not present in dataset");
    const double w = 1.0 / static_cast<double>(out.indices.size());
    out.weights.assign(out.indices.size(), w);
    out.forced.assign(out.indices.size(), false);
    return out;
}

std::vector<std::int64_t> rank_importance(const ImportanceSeries& imp, std::int64_t n_high) {
    const auto n = static_cast<std::int64_t>(imp.size());
    if (n_high < 0 || n_high > n)
        throw std::invalid_argument("rank_importance: need 0 <= n_high <= series length");
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        const double ia = imp[static_cast<std::size_t>(a)];
        const double ib = imp[static_cast<std::size_t>(b)];
        return ia > ib || (ia == ib && a < b);
    });
    order.resize(static_cast<std::size_t>(n_high));
    return order;
}

std::pair<Subsample, PlanSolution> importance_subsample(const WeightedTimeseries& ts,
                                                        const TechnologyParams& params,
                                                        const SamplerConfig& cfg,
                                                        const ImportanceFn& importance_fn) {
    cfg.validate();
    if (cfg.n_full != static_cast<std::int64_t>(ts.size()))
        throw std::invalid_argument("importance_subsample: cfg.n_full does not match dataset");

    // Stage 1: plan on a plain random sample.
    const Subsample stage1 =
        random_subsample(ts, cfg.n_sample, derive_seed(cfg.rng_seed, 1));
    const PlanSolution stage1_sol = plan_capacity(stage1.apply(ts), params);

    // Score every timestep of the full dataset against the stage-1 design.
    const ImportanceSeries imp = importance_fn
                                     ? importance_fn(ts, params, stage1_sol.design)
                                     : variable_cost(ts, params, stage1_sol.design);

    // Forced bin: the n_high highest scorers. Random bin: drawn from the rest.
    std::vector<std::int64_t> forced_idx = rank_importance(imp, cfg.n_high);
    std::vector<bool> is_forced(ts.size(), false);
    for (const std::int64_t i : forced_idx) is_forced[static_cast<std::size_t>(i)] = true;
    std::vector<std::int64_t> pool;
    pool.reserve(ts.size() - forced_idx.size());
    for (std::int64_t i = 0; i < cfg.n_full; ++i) {
        if (!is_forced[static_cast<std::size_t>(i)]) pool.push_back(i);
    }
    Rng rng2(derive_seed(cfg.rng_seed, 2));
    const std::vector<std::int64_t> random_idx =
        rng2.sample_from_pool(std::move(pool), cfg.n_sample - cfg.n_high);

    const double w_forced = 1.0 / static_cast<double>(cfg.n_full);
    const double w_random =
        static_cast<double>(cfg.n_full - cfg.n_high) /
        (static_cast<double>(cfg.n_full) * static_cast<double>(cfg.n_sample - cfg.n_high));

    Subsample out;
    out.indices.reserve(static_cast<std::size_t>(cfg.n_sample));
    out.weights.reserve(static_cast<std::size_t>(cfg.n_sample));
    out.forced.reserve(static_cast<std::size_t>(cfg.n_sample));
    std::sort(forced_idx.begin(), forced_idx.end());
    // Merge the two ascending index lists.
    std::size_t a = 0, b = 0;
    while (a < forced_idx.size() || b < random_idx.size()) {
        const bool take_forced =
            b == random_idx.size() || (a < forced_idx.size() && forced_idx[a] < random_idx[b]);
        if (take_forced) {
            out.indices.push_back(forced_idx[a++]);
            out.weights.push_back(w_forced);
            out.forced.push_back(true);
        } else {
            out.indices.push_back(random_idx[b++]);
            out.weights.push_back(w_random);
            out.forced.push_back(false);
        }
    }
    out.seed = cfg.rng_seed;
    out.has_stage1 = true;
    out.stage1_design = stage1_sol.design;
    return {std::move(out), stage1_sol};
}

}  // namespace psplan
