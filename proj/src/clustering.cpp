#include "psplan/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "psplan/rng.hpp"

namespace psplan {

namespace {

constexpr int kRestarts = 20;
constexpr int kMaxIterations = 120;

double sq_dist(const std::array<double, 48>& a, const std::array<double, 48>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 48; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

struct KmeansRun {
    std::vector<int> assignment;
    std::vector<std::array<double, 48>> means;
    std::vector<double> trace;  // objective at each assignment pass
    double objective = std::numeric_limits<double>::infinity();
};

KmeansRun run_kmeans(const std::vector<DayVector>& days, int k, std::uint64_t seed) {
    const std::size_t n = days.size();
    Rng rng(seed);
    KmeansRun run;
    run.means.resize(static_cast<std::size_t>(k));
    run.assignment.assign(n, 0);

    // Seeding: first center uniform, then each next center drawn with
    // probability proportional to squared distance from the nearest chosen one.
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    {
        const std::size_t first = static_cast<std::size_t>(rng.uniform_below(n));
        run.means[0] = days[first].values;
        for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(days[i].values, run.means[0]);
        for (int c = 1; c < k; ++c) {
            double total = 0.0;
            for (const double v : d2) total += v;
            std::size_t pick = 0;
            if (total > 0.0) {
                const double target = rng.uniform01() * total;
                double acc = 0.0;
                pick = n - 1;
                for (std::size_t i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (acc >= target) {
                        pick = i;
                        break;
                    }
                }
            } else {
                // All points coincide with chosen centers; any pick works.
                pick = static_cast<std::size_t>(rng.uniform_below(n));
            }
            run.means[static_cast<std::size_t>(c)] = days[pick].values;
            for (std::size_t i = 0; i < n; ++i)
                d2[i] = std::min(d2[i], sq_dist(days[i].values, run.means[static_cast<std::size_t>(c)]));
        }
    }

    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool changed = iter == 0;
        double pass_objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(days[i].values, run.means[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(days[i].values, run.means[static_cast<std::size_t>(c)]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            pass_objective += best_d;
            if (run.assignment[i] != best || iter == 0) {
                run.assignment[i] = best;
                changed = true;
            }
        }
        run.trace.push_back(pass_objective);
        if (!changed) break;

        std::fill(counts.begin(), counts.end(), 0);
        for (auto& m : run.means) m.fill(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(run.assignment[i]);
            ++counts[c];
            for (std::size_t j = 0; j < 48; ++j) run.means[c][j] += days[i].values[j];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (counts[c] > 0) {
                for (std::size_t j = 0; j < 48; ++j)
                    run.means[c][j] /= static_cast<double>(counts[c]);
            } else {
                // Reseed an empty cluster from the point farthest from its mean.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const auto ci = static_cast<std::size_t>(run.assignment[i]);
                    const double d = sq_dist(days[i].values, run.means[ci]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                run.means[c] = days[far].values;
            }
        }
    }

    run.objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(run.assignment[i]);
        run.objective += sq_dist(days[i].values, run.means[c]);
    }
    return run;
}

}  // namespace

void ClusterModel::validate(std::int64_t n_days) const {
    if (k <= 0) throw std::invalid_argument("cluster model: k must be positive");
    if (static_cast<std::int64_t>(assignment.size()) != n_days)
        throw std::invalid_argument("cluster model: assignment length mismatch");
    if (static_cast<int>(representative.size()) != k || static_cast<int>(sizes.size()) != k)
        throw std::invalid_argument("cluster model: per-cluster arrays must have k entries");
    std::int64_t total = 0;
    for (int c = 0; c < k; ++c) {
        if (representative[static_cast<std::size_t>(c)] < 0 ||
            representative[static_cast<std::size_t>(c)] >= n_days)
            throw std::invalid_argument("cluster model: representative out of range");
        total += sizes[static_cast<std::size_t>(c)];
    }
    if (total != n_days) throw std::invalid_argument("cluster model: sizes do not sum to day count");
    for (const int a : assignment) {
        if (a < 0 || a >= k) throw std::invalid_argument("cluster model: assignment out of range");
    }
}

std::vector<DayVector> build_day_vectors(const WeightedTimeseries& ts) {
    const std::size_t n = ts.size();
    if (n == 0 || n % 24 != 0)
        throw std::invalid_argument("day vectors need whole days (multiple of 24 timesteps), got " +
                                    std::to_string(n));
    double max_d = 0.0;
    for (const double d : ts.demand_gw) max_d = std::max(max_d, d);
    const double scale = max_d > 0.0 ? 1.0 / max_d : 1.0;

    std::vector<DayVector> days(n / 24);
    for (std::size_t day = 0; day < days.size(); ++day) {
        days[day].day = static_cast<std::int64_t>(day);
        for (std::size_t h = 0; h < 24; ++h) {
            days[day].values[h] = ts.demand_gw[day * 24 + h] * scale;
            days[day].values[24 + h] = ts.wind_cf[day * 24 + h];
        }
    }
    return days;
}

ClusterModel cluster_days(const std::vector<DayVector>& days, int k, std::uint64_t seed) {
    const auto n = static_cast<std::int64_t>(days.size());
    if (n == 0) throw std::invalid_argument("cluster_days: no days");
    if (k < 1 || static_cast<std::int64_t>(k) > n)
        throw std::invalid_argument("cluster_days: need 1 <= k <= number of days");

    KmeansRun best;
    for (int r = 0; r < kRestarts; ++r) {
        KmeansRun run = run_kmeans(days, k, derive_seed(seed, static_cast<std::uint64_t>(r)));
        if (run.objective < best.objective) best = std::move(run);
    }

    ClusterModel model;
    model.k = k;
    model.assignment = best.assignment;
    model.sizes.assign(static_cast<std::size_t>(k), 0);
    for (const int a : best.assignment) ++model.sizes[static_cast<std::size_t>(a)];

    // Each cluster is represented by the real day nearest its mean; when two
    // clusters would pick the same day, later clusters move on to their next
    // nearest unused day.
    std::vector<bool> used(days.size(), false);
    model.representative.assign(static_cast<std::size_t>(k), 0);
    for (int c = 0; c < k; ++c) {
        std::int64_t pick = -1;
        double pick_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < days.size(); ++i) {
            if (used[i]) continue;
            const double d = sq_dist(days[i].values, best.means[static_cast<std::size_t>(c)]);
            if (d < pick_d) {
                pick_d = d;
                pick = static_cast<std::int64_t>(i);
            }
        }
        model.representative[static_cast<std::size_t>(c)] = pick;
        used[static_cast<std::size_t>(pick)] = true;
    }
    model.objective = best.objective;
    model.objective_trace = std::move(best.trace);
    model.validate(n);
    return model;
}

Subsample representative_subsample(const WeightedTimeseries& ts, const ClusterModel& model) {
    const auto n_days = static_cast<std::int64_t>(ts.size() / 24);
    model.validate(n_days);
    std::vector<std::pair<std::int64_t, double>> picks;
    picks.reserve(static_cast<std::size_t>(model.k) * 24);
    for (int c = 0; c < model.k; ++c) {
        const std::int64_t day = model.representative[static_cast<std::size_t>(c)];
        const double w = static_cast<double>(model.sizes[static_cast<std::size_t>(c)]) /
                         (static_cast<double>(n_days) * 24.0);
        for (std::int64_t h = 0; h < 24; ++h) picks.emplace_back(day * 24 + h, w);
    }
    std::sort(picks.begin(), picks.end());
    Subsample out;
    out.indices.reserve(picks.size());
    out.weights.reserve(picks.size());
    for (const auto& [idx, w] : picks) {
        out.indices.push_back(idx);
        out.weights.push_back(w);
    }
    out.forced.assign(picks.size(), false);
    return out;
}

std::string cluster_model_to_json(const ClusterModel& model) {
    nlohmann::json j;
    j["k"] = model.k;
    j["assignment"] = model.assignment;
    j["representative_days"] = model.representative;
    j["cluster_sizes"] = model.sizes;
    j["objective"] = model.objective;
    return j.dump(2) + "\n";
}

ClusterModel cluster_model_from_json(const std::string& text) {
    ClusterModel model;
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        model.k = j.at("k").get<int>();
        model.assignment = j.at("assignment").get<std::vector<int>>();
        model.representative = j.at("representative_days").get<std::vector<std::int64_t>>();
        model.sizes = j.at("cluster_sizes").get<std::vector<std::int64_t>>();
        model.objective = j.value("objective", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("cluster model JSON: ") + e.what());
    }
    return model;
}

}  // namespace psplan
