#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "psplan/calendar.hpp"
#include "psplan/kv_config.hpp"
#include "psplan/rng.hpp"
#include "psplan/types.hpp"

using namespace psplan;

TEST_CASE("seed derivation separates streams and stays stable") {
    CHECK(splitmix64(42) == splitmix64(42));
    CHECK(derive_seed(1, 1) != derive_seed(1, 2));
    CHECK(derive_seed(1, 1) != derive_seed(2, 1));
    // FNV-1a offset basis for the empty string; a frozen anchor so the
    // documented replicate-seed recipe cannot drift silently.
    CHECK(hash_label("") == 0xCBF29CE484222325ULL);
    CHECK(hash_label("importance") != hash_label("random"));
}

TEST_CASE("uniform_below is in range and roughly uniform") {
    Rng rng(123);
    const std::uint64_t n = 6;
    std::vector<int> bins(n, 0);
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        const std::uint64_t v = rng.uniform_below(n);
        REQUIRE(v < n);
        ++bins[static_cast<std::size_t>(v)];
    }
    for (const int b : bins) {
        CHECK(b > draws / static_cast<int>(n) * 90 / 100);
        CHECK(b < draws / static_cast<int>(n) * 110 / 100);
    }
    CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("uniform01 stays strictly inside (0,1) with the right mean") {
    Rng rng(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("normal deviates have zero mean and unit variance") {
    Rng rng(99);
    double sum = 0.0, sumsq = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("sampling without replacement returns sorted distinct indices") {
    Rng rng(5);
    const auto s = rng.sample_without_replacement(100, 10);
    REQUIRE(s.size() == 10);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i] >= 0);
        CHECK(s[i] < 100);
        if (i > 0) CHECK(s[i] > s[i - 1]);
    }
    // Full draw is the identity.
    Rng rng2(5);
    const auto all = rng2.sample_without_replacement(5, 5);
    for (std::int64_t i = 0; i < 5; ++i) CHECK(all[static_cast<std::size_t>(i)] == i);
    CHECK_THROWS_AS(rng.sample_without_replacement(3, 4), std::invalid_argument);

    // Inclusion probability is n/population for every index.
    const int trials = 2000;
    std::vector<int> hits(20, 0);
    for (int t = 0; t < trials; ++t) {
        Rng r(static_cast<std::uint64_t>(t) + 1000);
        for (const std::int64_t idx : r.sample_without_replacement(20, 5))
            ++hits[static_cast<std::size_t>(idx)];
    }
    for (const int h : hits) {
        CHECK(h > trials / 4 * 70 / 100);
        CHECK(h < trials / 4 * 130 / 100);
    }
}

TEST_CASE("identical seeds reproduce identical streams") {
    Rng a(2024), b(2024);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("civil date arithmetic round-trips and anchors hold") {
    CHECK(days_from_civil(1970, 1, 1) == 0);
    CHECK(days_from_civil(2011, 1, 1) == 14975);
    CHECK(weekday_from_days(0) == 3);  // 1970-01-01 was a Thursday
    CHECK(weekday_from_days(days_from_civil(2026, 8, 16)) == 6);  // a Sunday
    for (std::int64_t d = -40000; d <= 40000; d += 97) {
        const CivilDate cd = civil_from_days(d);
        CHECK(days_from_civil(cd.year, cd.month, cd.day) == d);
    }
    CHECK(is_leap_year(2000));
    CHECK_FALSE(is_leap_year(1900));
    CHECK(is_leap_year(2012));
    CHECK_FALSE(is_leap_year(2011));
}

TEST_CASE("season positions and lengths follow the calendar") {
    const auto dec1 = season_position({2011, 12, 1});
    CHECK(dec1.season == Season::DJF);
    CHECK(dec1.day_index == 0);
    CHECK(dec1.season_len == 91);  // Dec 2011 + Jan + leap Feb 2012

    const auto jan15 = season_position({2011, 1, 15});
    CHECK(jan15.season == Season::DJF);
    CHECK(jan15.day_index == 31 + 14);
    CHECK(jan15.season_len == 90);  // Feb 2011 is not leap

    CHECK(season_position({2011, 3, 1}).season == Season::MAM);
    CHECK(season_position({2011, 5, 31}).season == Season::MAM);
    CHECK(season_position({2011, 3, 1}).season_len == 92);
    CHECK(season_position({2011, 6, 10}).season == Season::JJA);
    CHECK(season_position({2011, 9, 10}).season == Season::SON);
    CHECK(season_position({2011, 9, 1}).season_len == 91);
}

TEST_CASE("ISO 8601 timestamps parse and format exactly") {
    CHECK(parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_iso8601_utc("2011-01-01T00:00:00Z") == 14975LL * 86400);
    CHECK(format_iso8601_utc(14975LL * 86400 + 3600) == "2011-01-01T01:00:00Z");
    for (std::int64_t s : {0LL, 86399LL, 1234567890LL, 14975LL * 86400}) {
        CHECK(parse_iso8601_utc(format_iso8601_utc(s)) == s);
    }
    CHECK_THROWS_AS(parse_iso8601_utc("2011-01-01 00:00:00"), std::invalid_argument);
    CHECK_THROWS_AS(parse_iso8601_utc("2011-13-01T00:00:00Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_iso8601_utc("2011-01-01T25:00:00Z"), std::invalid_argument);
    CHECK(parse_iso_date("2011-01-01") == 14975);
    CHECK_THROWS_AS(parse_iso_date("2011/01/01"), std::invalid_argument);
}

TEST_CASE("key-value files parse with comments, repeats, and line numbers") {
    const std::string text =
        "# header comment\n"
        "alpha = 1.5\n"
        "\n"
        "name = hello world  # trailing comment\n"
        "alpha = 2.5\n"
        "run = a:1:2\n"
        "run = b:3:4\n"
        "flag = true\n"
        "count = 12\n";
    const KvFile kv = KvFile::parse_string(text, "test.conf");
    CHECK(kv.get_double("alpha") == 2.5);  // last occurrence wins
    CHECK(kv.get("name") == "hello world");
    CHECK(kv.get_all("run") == std::vector<std::string>{"a:1:2", "b:3:4"});
    CHECK(kv.entries_for("run")[1].line == 7);
    CHECK(kv.get_bool_or("flag", false));
    CHECK(kv.get_int("count") == 12);
    CHECK(kv.get_or("missing", "fallback") == "fallback");
    CHECK(kv.get_int_or("missing", 9) == 9);
    CHECK_THROWS_WITH_AS(kv.get("missing"), "test.conf: missing key 'missing'",
                         std::invalid_argument);
    CHECK_THROWS_AS(KvFile::parse_string("no equals sign\n", "bad.conf"), std::invalid_argument);
    CHECK_THROWS_AS(kv.get_double("name"), std::invalid_argument);
    CHECK_THROWS_AS(kv.get_int("alpha"), std::invalid_argument);
    CHECK(KvFile::parse_double_list("1 2.5 -3", "ctx") == std::vector<double>{1.0, 2.5, -3.0});
    CHECK_THROWS_AS(KvFile::parse_double_list("1 x", "ctx"), std::invalid_argument);
    CHECK(KvFile::parse_int("42", "ctx") == 42);
    CHECK_THROWS_AS(KvFile::parse_int("4.2", "ctx"), std::invalid_argument);
}

TEST_CASE("timeseries validation names the offending row") {
    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights({1.0, 2.0}, {0.5, 0.25});
    CHECK_NOTHROW(ts.validate());

    WeightedTimeseries bad = ts;
    bad.demand_gw[1] = -1.0;
    CHECK_THROWS_WITH_AS(bad.validate(), "timeseries row 1: demand must be finite and >= 0",
                         std::invalid_argument);

    bad = ts;
    bad.wind_cf[0] = 1.5;
    CHECK_THROWS_WITH_AS(bad.validate(), "timeseries row 0: wind_cf must lie in [0, 1]",
                         std::invalid_argument);

    bad = ts;
    bad.weight = {0.9, 0.2};  // sums to 1.1
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(bad.validate(false));

    CHECK_THROWS_AS(WeightedTimeseries{}.validate(), std::invalid_argument);
}

TEST_CASE("timeseries selection and reweighting") {
    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        {1.0, 2.0, 3.0, 4.0}, {0.1, 0.2, 0.3, 0.4}, {0, 3600, 7200, 10800});
    const WeightedTimeseries sub = ts.select({1, 3}, {0.25, 0.75});
    REQUIRE(sub.size() == 2);
    CHECK(sub.demand_gw == std::vector<double>{2.0, 4.0});
    CHECK(sub.wind_cf == std::vector<double>{0.2, 0.4});
    CHECK(sub.weight == std::vector<double>{0.25, 0.75});
    CHECK(sub.time_epoch_s == std::vector<std::int64_t>{3600, 10800});
    CHECK_THROWS_AS(ts.select({4}, {1.0}), std::invalid_argument);

    const WeightedTimeseries eq = sub.reweighted_equal();
    CHECK(eq.weight == std::vector<double>{0.5, 0.5});
}

TEST_CASE("calendar years are read off timestamps") {
    // One timestep at the end of 2010, one at the start of 2011.
    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        {1.0, 1.0}, {0.0, 0.0},
        {14975LL * 86400 - 3600, 14975LL * 86400});
    CHECK(ts.year_at(0) == 2010);
    CHECK(ts.year_at(1) == 2011);
    CHECK(ts.distinct_years() == std::vector<int>{2010, 2011});
    WeightedTimeseries no_time = WeightedTimeseries::with_equal_weights({1.0}, {0.0});
    CHECK_THROWS_AS(no_time.year_at(0), std::invalid_argument);
}

TEST_CASE("technology and design validation") {
    TechnologyParams p;
    CHECK_NOTHROW(p.validate());
    p.mid_merit.gen_cost = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    SystemDesign d{1.0, 2.0, 3.0, 4.0};
    CHECK_NOTHROW(d.validate());
    CHECK(d.conventional_total() == 6.0);
    d.peaking_gw = -1.0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}
