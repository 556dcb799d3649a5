#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "psplan/dispatch.hpp"
#include "psplan/planner.hpp"
#include "psplan/rng.hpp"
#include "psplan/types.hpp"
#include "support/lp_oracle.hpp"
#include "support/test_instances.hpp"

using namespace psplan;

namespace {

// The reference simplex must itself be trustworthy before anything is
// compared against it.
TEST_CASE("lp oracle solves textbook problems") {
    {
        // max x1 + 2 x2  s.t.  x1 + x2 <= 4, x1 <= 2   ->  (0, 4), value -8
        lp::Problem p;
        p.objective = {-1.0, -2.0};
        p.add_row({1.0, 1.0}, lp::Rel::le, 4.0);
        p.add_row({1.0, 0.0}, lp::Rel::le, 2.0);
        const lp::Solution s = lp::solve(p);
        REQUIRE(s.feasible);
        REQUIRE(s.bounded);
        CHECK(s.objective == doctest::Approx(-8.0).epsilon(1e-9));
        CHECK(s.x[0] == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(s.x[1] == doctest::Approx(4.0).epsilon(1e-9));
    }
    {
        // min 2 x1 + 3 x2  s.t.  x1 + x2 >= 4, x1 <= 3  ->  (3, 1), value 9
        lp::Problem p;
        p.objective = {2.0, 3.0};
        p.add_row({1.0, 1.0}, lp::Rel::ge, 4.0);
        p.add_row({1.0, 0.0}, lp::Rel::le, 3.0);
        const lp::Solution s = lp::solve(p);
        REQUIRE(s.feasible);
        CHECK(s.objective == doctest::Approx(9.0).epsilon(1e-9));
        CHECK(s.x[0] == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(s.x[1] == doctest::Approx(1.0).epsilon(1e-9));
    }
    {
        // min x1 + 2 x2  s.t.  x1 + x2 = 3  ->  (3, 0), value 3
        lp::Problem p;
        p.objective = {1.0, 2.0};
        p.add_row({1.0, 1.0}, lp::Rel::eq, 3.0);
        const lp::Solution s = lp::solve(p);
        REQUIRE(s.feasible);
        CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(s.x[0] == doctest::Approx(3.0).epsilon(1e-9));
    }
    {
        // Infeasible: x1 <= 1 and x1 >= 2.
        lp::Problem p;
        p.objective = {1.0};
        p.add_row({1.0}, lp::Rel::le, 1.0);
        p.add_row({1.0}, lp::Rel::ge, 2.0);
        CHECK_FALSE(lp::solve(p).feasible);
    }
    {
        // Unbounded: min -x1 with only x2 constrained.
        lp::Problem p;
        p.objective = {-1.0, 0.0};
        p.add_row({0.0, 1.0}, lp::Rel::le, 1.0);
        const lp::Solution s = lp::solve(p);
        REQUIRE(s.feasible);
        CHECK_FALSE(s.bounded);
    }
    {
        // Negative rhs rows are handled by sign flipping:
        // min x1  s.t.  -x1 <= -2  ->  x1 = 2.
        lp::Problem p;
        p.objective = {1.0};
        p.add_row({-1.0}, lp::Rel::le, -2.0);
        const lp::Solution s = lp::solve(p);
        REQUIRE(s.feasible);
        CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-9));
    }
}

void check_against_oracle(const WeightedTimeseries& ts, const TechnologyParams& params) {
    const PlanSolution sol = plan_capacity(ts, params);
    const lp::Solution ref = lp::solve(lp::build_plan_lp(ts, params));
    REQUIRE(ref.feasible);
    REQUIRE(ref.bounded);
    CHECK(sol.objective_cost ==
          doctest::Approx(ref.objective).epsilon(1e-6));
    // Hard constraint: the returned design leaves nothing unserved.
    CHECK(sol.dispatch.total_unserved() == 0.0);
    // Reported objective is exactly the cost formula of (design, dispatch).
    CHECK(sol.objective_cost ==
          doctest::Approx(objective_value(ts, params, sol.design, sol.dispatch))
              .epsilon(1e-9));
}

}  // namespace

TEST_CASE("planner matches the lp oracle on random instances") {
    Rng rng(20260816);
    for (int i = 0; i < 40; ++i) {
        const int T = 6 + static_cast<int>(rng.uniform_below(43));
        const bool skewed = i % 2 == 1;
        const bool wind_fuel = i % 4 == 2;  // wind with positive running cost
        const WeightedTimeseries ts = testsupport::random_series(rng, T, skewed);
        const TechnologyParams params = testsupport::random_params(rng, wind_fuel);
        CAPTURE(i);
        check_against_oracle(ts, params);
    }
}

TEST_CASE("fixed-wind planning matches the lp oracle") {
    Rng rng(77);
    for (int i = 0; i < 15; ++i) {
        const int T = 6 + static_cast<int>(rng.uniform_below(30));
        const WeightedTimeseries ts = testsupport::random_series(rng, T, i % 2 == 1);
        const TechnologyParams params = testsupport::random_params(rng, i % 3 == 2);
        const double wind_gw = 30.0 * rng.uniform01();
        CAPTURE(i);
        const PlanSolution sol = plan_capacity_fixed_wind(ts, params, wind_gw);
        CHECK(sol.design.wind_gw == wind_gw);
        const lp::Solution ref = lp::solve(lp::build_plan_lp_fixed_wind(ts, params, wind_gw));
        REQUIRE(ref.feasible);
        CHECK(sol.objective_cost == doctest::Approx(ref.objective).epsilon(1e-6));
        CHECK(sol.dispatch.total_unserved() == 0.0);
    }
    CHECK_THROWS_AS(
        plan_capacity_fixed_wind(WeightedTimeseries::with_equal_weights({1.0}, {0.0}),
                                 TechnologyParams{}, -1.0),
        std::invalid_argument);
}

TEST_CASE("flat demand with no wind resource is served by baseload alone") {
    // 10 GW around the clock: baseload offers the cheapest full-time energy
    // (300 + 0.005 * 8760 = 343.8 per GW-year), so z = 3438.
    const int T = 100;
    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        std::vector<double>(T, 10.0), std::vector<double>(T, 0.0));
    const PlanSolution sol = plan_capacity(ts, TechnologyParams{});
    CHECK(sol.objective_cost == doctest::Approx(3438.0).epsilon(1e-9));
    CHECK(sol.design.baseload_gw == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(sol.design.mid_merit_gw == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sol.design.peaking_gw == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sol.design.wind_gw == 0.0);  // idle wind snaps to exactly zero
}

TEST_CASE("always-full wind displaces conventional capacity entirely") {
    // Capacity factor 1 around the clock makes wind strictly cheaper than
    // baseload (100 vs 343.8 per GW-year of firm supply).
    const int T = 50;
    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        std::vector<double>(T, 10.0), std::vector<double>(T, 1.0));
    const PlanSolution sol = plan_capacity(ts, TechnologyParams{});
    CHECK(sol.objective_cost == doctest::Approx(1000.0).epsilon(1e-6));
    CHECK(sol.design.wind_gw == doctest::Approx(10.0).epsilon(1e-4));
    CHECK(sol.design.conventional_total() == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("capacity choice flips technology at the utilization thresholds") {
    // A demand block of 10 GW on a fraction q of timesteps runs q*8760 hours
    // a year. Peaking and mid-merit break even at u = 50/0.065 h (q ~ 0.0878);
    // mid-merit and baseload at u = 200/0.03 h (q ~ 0.7610).
    const int T = 10000;
    const auto two_level = [&](double q) {
        std::vector<double> demand(T, 10.0);
        const int spike = static_cast<int>(std::lround(q * T));
        for (int t = 0; t < spike; ++t) demand[static_cast<std::size_t>(t)] = 20.0;
        return WeightedTimeseries::with_equal_weights(std::move(demand),
                                                      std::vector<double>(T, 0.0));
    };
    const TechnologyParams params;

    const double q_pm = 50.0 / 0.065 / kHoursPerYear;
    PlanSolution below = plan_capacity(two_level(q_pm - 0.005), params);
    CHECK(below.design.peaking_gw == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(below.design.mid_merit_gw == doctest::Approx(0.0).epsilon(1e-6));
    PlanSolution above = plan_capacity(two_level(q_pm + 0.005), params);
    CHECK(above.design.peaking_gw == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(above.design.mid_merit_gw == doctest::Approx(10.0).epsilon(1e-6));

    const double q_mb = 200.0 / 0.03 / kHoursPerYear;
    below = plan_capacity(two_level(q_mb - 0.005), params);
    CHECK(below.design.mid_merit_gw == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(below.design.baseload_gw == doctest::Approx(10.0).epsilon(1e-6));
    above = plan_capacity(two_level(q_mb + 0.005), params);
    CHECK(above.design.mid_merit_gw == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(above.design.baseload_gw == doctest::Approx(20.0).epsilon(1e-6));
}

TEST_CASE("scaling every weight by a constant leaves the chosen design unchanged") {
    Rng rng(4242);
    const WeightedTimeseries ts = testsupport::random_series(rng, 60, true);
    const TechnologyParams params = testsupport::random_params(rng);
    const PlanSolution base = plan_capacity(ts, params);
    for (const double k : {7.0, 0.001}) {
        WeightedTimeseries scaled = ts;
        for (double& w : scaled.weight) w *= k;
        const PlanSolution s = plan_capacity(scaled, params);  // weights no longer sum to 1
        CHECK(s.design.baseload_gw == doctest::Approx(base.design.baseload_gw).epsilon(1e-6));
        CHECK(s.design.mid_merit_gw == doctest::Approx(base.design.mid_merit_gw).epsilon(1e-6));
        CHECK(s.design.peaking_gw == doctest::Approx(base.design.peaking_gw).epsilon(1e-6));
        CHECK(s.design.wind_gw == doctest::Approx(base.design.wind_gw).epsilon(1e-6));
    }
}

TEST_CASE("solve tally counts planner calls and timesteps") {
    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        std::vector<double>(30, 5.0), std::vector<double>(30, 0.2));
    ScopedSolveTally outer;
    {
        ScopedSolveTally tally;
        plan_capacity(ts, TechnologyParams{});
        plan_capacity_fixed_wind(ts, TechnologyParams{}, 1.0);
        CHECK(tally.current().plan_calls == 2);
        CHECK(tally.current().plan_timesteps == 60);
    }
    // The inner scope's counts roll up into the enclosing measurement.
    CHECK(outer.current().plan_calls == 2);
    CHECK(outer.current().plan_timesteps == 60);
}

TEST_CASE("planner rejects invalid input") {
    CHECK_THROWS_AS(plan_capacity(WeightedTimeseries{}, TechnologyParams{}),
                    std::invalid_argument);
    WeightedTimeseries ts = WeightedTimeseries::with_equal_weights({1.0}, {2.0});
    CHECK_THROWS_AS(plan_capacity(ts, TechnologyParams{}), std::invalid_argument);
}
