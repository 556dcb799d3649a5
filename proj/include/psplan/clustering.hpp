#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "psplan/sampling.hpp"
#include "psplan/types.hpp"

namespace psplan {

// One calendar day as a point in R^48: 24 hourly demands scaled by the
// dataset-wide demand maximum, then 24 hourly wind capacity factors, so both
// halves live in [0, 1].
struct DayVector {
    std::int64_t day = 0;  // 0-based day position within the dataset
    std::array<double, 48> values{};
};

struct ClusterModel {
    int k = 0;
    std::vector<int> assignment;              // cluster id per day
    std::vector<std::int64_t> representative;  // day index per cluster
    std::vector<std::int64_t> sizes;           // member count per cluster
    double objective = 0.0;                    // within-cluster sum of squares
    std::vector<double> objective_trace;       // objective at each refinement pass

    void validate(std::int64_t n_days) const;
};

// Splits the dataset into whole days; a trailing partial day is rejected.
std::vector<DayVector> build_day_vectors(const WeightedTimeseries& ts);

// Weighted k-means on the day vectors (squared Euclidean, k-means++ style
// seeding, 20 restarts, empty clusters reseeded from the farthest point),
// then each cluster's representative is the real day closest to its mean.
// Deterministic for a given seed.
ClusterModel cluster_days(const std::vector<DayVector>& days, int k, std::uint64_t seed);

// All 24 hours of each representative day; each hour of cluster c's
// representative weighs size_c / (n_days * 24), so the weights sum to 1.
Subsample representative_subsample(const WeightedTimeseries& ts, const ClusterModel& model);

// JSON round-trip for audit output.
std::string cluster_model_to_json(const ClusterModel& model);
ClusterModel cluster_model_from_json(const std::string& text);

}  // namespace psplan
