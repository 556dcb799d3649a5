#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace psplan {

// Stateless SplitMix64 finalizer. Used both for seed derivation and as the
// documented replicate-seed hash (see README, "Seeds and determinism").
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from a base seed and a tag.
// Chaining derive_seed calls extends the tag sequence.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix64(base ^ splitmix64(tag ^ 0xA0761D6478BD642FULL));
}

// FNV-1a, for hashing short labels (sampler names) into seed tags.
inline std::uint64_t hash_label(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Deterministic RNG: mt19937_64 (bit-stable across platforms) plus our own
// draw routines, since std::uniform_*_distribution is not guaranteed to
// produce identical streams across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::uniform_below: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in (0,1), 53-bit resolution, never exactly 0 or 1.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; second deviate cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // n distinct indices from [0, population), uniformly without replacement,
    // returned ascending. Partial Fisher-Yates over an index table.
    std::vector<std::int64_t> sample_without_replacement(std::int64_t population, std::int64_t n) {
        if (n < 0 || population < 0 || n > population)
            throw std::invalid_argument("Rng::sample_without_replacement: need 0 <= n <= population");
        std::vector<std::int64_t> pool(static_cast<std::size_t>(population));
        for (std::int64_t i = 0; i < population; ++i) pool[static_cast<std::size_t>(i)] = i;
        return sample_from_pool(std::move(pool), n);
    }

    // Same draw, but from a caller-supplied candidate pool (consumed).
    std::vector<std::int64_t> sample_from_pool(std::vector<std::int64_t> pool, std::int64_t n) {
        const auto population = static_cast<std::int64_t>(pool.size());
        if (n < 0 || n > population)
            throw std::invalid_argument("Rng::sample_from_pool: need 0 <= n <= pool size");
        for (std::int64_t i = 0; i < n; ++i) {
            const std::uint64_t j = i + uniform_below(static_cast<std::uint64_t>(population - i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        pool.resize(static_cast<std::size_t>(n));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace psplan
