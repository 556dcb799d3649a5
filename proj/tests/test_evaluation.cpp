#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "psplan/dispatch.hpp"
#include "psplan/evaluation.hpp"
#include "psplan/planner.hpp"
#include "psplan/rng.hpp"
#include "psplan/types.hpp"
#include "support/test_instances.hpp"

using namespace psplan;

TEST_CASE("adequacy counts shortfall hours and energy") {
    const WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        {10.0, 12.0, 12.0, 9.0}, {0.0, 0.0, 0.0, 0.0});
    SystemDesign design;
    design.baseload_gw = 10.0;
    const AdequacyReport rep = adequacy(ts, TechnologyParams{}, design);
    CHECK(rep.hours_unmet == 2);
    CHECK(rep.unserved_energy_gwh == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rep.max_shortfall_gw == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.per_year.empty());  // no timestamps, no per-year split
}

TEST_CASE("adequacy ignores the dataset weights") {
    Rng rng(100);
    const WeightedTimeseries ts = testsupport::random_series(rng, 60, true);
    SystemDesign design;
    design.baseload_gw = 20.0;
    design.wind_gw = 5.0;
    const AdequacyReport a = adequacy(ts, TechnologyParams{}, design);
    const AdequacyReport b = adequacy(ts.reweighted_equal(), TechnologyParams{}, design);
    CHECK(a.hours_unmet == b.hours_unmet);
    CHECK(a.unserved_energy_gwh == b.unserved_energy_gwh);
    CHECK(a.max_shortfall_gw == b.max_shortfall_gw);
}

TEST_CASE("tiny shortfalls below the threshold do not count as unmet hours") {
    const WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        {10.0 + 1e-10, 10.0 + 1e-8}, {0.0, 0.0});
    SystemDesign design;
    design.baseload_gw = 10.0;
    const AdequacyReport rep = adequacy(ts, TechnologyParams{}, design);
    CHECK(rep.hours_unmet == 1);  // only the 1e-8 GW shortfall registers
}

TEST_CASE("adequacy splits by calendar year when timestamps exist") {
    // Three hours of 2010 with shortfall, two adequate hours of 2011.
    const std::int64_t jan1_2011 = 14975LL * 86400;
    const WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        {12.0, 13.0, 9.0, 10.0, 8.0}, std::vector<double>(5, 0.0),
        {jan1_2011 - 3 * 3600, jan1_2011 - 2 * 3600, jan1_2011 - 3600, jan1_2011,
         jan1_2011 + 3600});
    SystemDesign design;
    design.baseload_gw = 10.0;
    const AdequacyReport rep = adequacy(ts, TechnologyParams{}, design);
    CHECK(rep.hours_unmet == 2);
    REQUIRE(rep.per_year.size() == 2);
    CHECK(rep.per_year[0].year == 2010);
    CHECK(rep.per_year[0].hours_unmet == 2);
    CHECK(rep.per_year[0].unserved_energy_gwh == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(rep.per_year[0].max_shortfall_gw == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.per_year[1].year == 2011);
    CHECK(rep.per_year[1].hours_unmet == 0);
}

TEST_CASE("extra system cost follows the patch-then-compare recipe") {
    const WeightedTimeseries ts =
        WeightedTimeseries::with_equal_weights({10.0, 12.0}, {0.0, 0.0});
    const TechnologyParams params;

    SUBCASE("a short design is patched with peaking before costing") {
        SystemDesign design;
        design.baseload_gw = 10.0;
        const CostReport rep = extra_system_cost(ts, params, design);
        CHECK(rep.extra_peaking_added_gw == doctest::Approx(2.0).epsilon(1e-9));
        // Patched design (10 baseload, 2 peaking): 3100 install,
        // 8760 * (0.5*0.05 + 0.5*(0.05 + 0.2)) = 1314 running.
        CHECK(rep.system_cost == doctest::Approx(4414.0).epsilon(1e-9));
        // Optimum is 10 baseload + 2 mid-merit: 3200 + 8760*0.085.
        CHECK(rep.optimal_cost == doctest::Approx(3944.6).epsilon(1e-9));
        CHECK(rep.extra_system_cost == doctest::Approx(469.4).epsilon(1e-9));
    }

    SUBCASE("idle surplus capacity costs exactly its installation") {
        SystemDesign design;
        design.baseload_gw = 10.0;
        design.mid_merit_gw = 2.0 + 3.0;  // 3 GW beyond the optimum's 2
        const CostReport rep = extra_system_cost(ts, params, design);
        CHECK(rep.extra_peaking_added_gw == 0.0);
        CHECK(rep.extra_system_cost == doctest::Approx(300.0).epsilon(1e-9));
    }

    SUBCASE("the optimum itself scores zero") {
        const PlanSolution opt = plan_capacity(ts.reweighted_equal(), params);
        const CostReport rep = extra_system_cost(ts, params, opt.design, opt);
        CHECK(std::abs(rep.extra_system_cost) < 1e-6);
        CHECK(rep.extra_peaking_added_gw == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("the reusable-optimum overload matches the self-computing one") {
    Rng rng(55);
    const WeightedTimeseries ts = testsupport::random_series(rng, 40);
    const TechnologyParams params;
    SystemDesign design;
    design.baseload_gw = 15.0;
    design.peaking_gw = 10.0;
    design.wind_gw = 3.0;
    const PlanSolution opt = plan_capacity(ts.reweighted_equal(), params);
    const CostReport a = extra_system_cost(ts, params, design);
    const CostReport b = extra_system_cost(ts, params, design, opt);
    CHECK(a.system_cost == doctest::Approx(b.system_cost).epsilon(1e-12));
    CHECK(a.optimal_cost == doctest::Approx(b.optimal_cost).epsilon(1e-12));
    CHECK(a.extra_system_cost == doctest::Approx(b.extra_system_cost).epsilon(1e-12));
}

TEST_CASE("no perturbed design beats the optimum after patching") {
    Rng rng(77);
    const WeightedTimeseries ts = testsupport::random_series(rng, 30);
    const TechnologyParams params;
    const PlanSolution opt = plan_capacity(ts.reweighted_equal(), params);
    for (int i = 0; i < 50; ++i) {
        SystemDesign d = opt.design;
        d.baseload_gw = std::max(0.0, d.baseload_gw + 6.0 * (rng.uniform01() - 0.5));
        d.mid_merit_gw = std::max(0.0, d.mid_merit_gw + 6.0 * (rng.uniform01() - 0.5));
        d.peaking_gw = std::max(0.0, d.peaking_gw + 6.0 * (rng.uniform01() - 0.5));
        d.wind_gw = std::max(0.0, d.wind_gw + 6.0 * (rng.uniform01() - 0.5));
        const CostReport rep = extra_system_cost(ts, params, d, opt);
        CHECK(rep.extra_system_cost >= -1e-6);
    }
}

TEST_CASE("cross-year matrix has a zero diagonal and exposes asymmetric stress") {
    // Year 2010 peaks at 30 GW, year 2011 at 20 GW, 24 hours each.
    std::vector<double> demand;
    std::vector<std::int64_t> time;
    const std::int64_t jan1_2011 = 14975LL * 86400;
    for (int h = 0; h < 24; ++h) {
        demand.push_back(h == 12 ? 30.0 : 15.0);
        time.push_back(jan1_2011 - 86400 + h * 3600);
    }
    for (int h = 0; h < 24; ++h) {
        demand.push_back(h == 12 ? 20.0 : 15.0);
        time.push_back(jan1_2011 + h * 3600);
    }
    const WeightedTimeseries ts = WeightedTimeseries::with_equal_weights(
        demand, std::vector<double>(48, 0.0), time);

    const CrossYearMatrix m = cross_year_matrix(ts, TechnologyParams{});
    REQUIRE(m.years == std::vector<int>{2010, 2011});
    REQUIRE(m.hours.size() == 2);
    CHECK(m.hours[0][0] == 0);
    CHECK(m.hours[1][1] == 0);
    CHECK(m.hours[0][1] == 0);  // the big year's design covers the small year
    CHECK(m.hours[1][0] > 0);   // but not the other way round

    // A single-year dataset has nothing to cross-evaluate.
    const WeightedTimeseries one_year = WeightedTimeseries::with_equal_weights(
        {10.0, 11.0}, {0.0, 0.0}, {jan1_2011, jan1_2011 + 3600});
    CHECK_THROWS_AS(cross_year_matrix(one_year, TechnologyParams{}), std::invalid_argument);
}

TEST_CASE("the wind cost curve is sorted and matches fixed-wind plans") {
    Rng rng(12);
    const WeightedTimeseries ts = testsupport::random_series(rng, 36);
    const TechnologyParams params;
    const auto curve = wind_cost_curve(ts, params, {4.0, 0.0, 2.0, 6.0});
    REQUIRE(curve.size() == 4);
    CHECK(std::is_sorted(curve.begin(), curve.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; }));
    for (const auto& [w, cost] : curve) {
        const PlanSolution sol = plan_capacity_fixed_wind(ts, params, w);
        CHECK(cost == doctest::Approx(sol.objective_cost).epsilon(1e-9));
        CHECK(sol.design.wind_gw == doctest::Approx(w).epsilon(1e-12));
    }
    // The unconstrained optimum is no worse than any point on the curve.
    const PlanSolution best = plan_capacity(ts, params);
    for (const auto& [w, cost] : curve) CHECK(best.objective_cost <= cost + 1e-6);
}

TEST_CASE("percentiles interpolate linearly between order statistics") {
    std::vector<double> ramp(101);
    for (int i = 0; i <= 100; ++i) ramp[static_cast<std::size_t>(i)] = i;
    CHECK(percentile(ramp, 25.0) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(percentile(ramp, 0.0) == 0.0);
    CHECK(percentile(ramp, 100.0) == 100.0);

    CHECK(percentile({10.0, 0.0}, 50.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(percentile({3.0}, 97.5) == 3.0);
    CHECK(percentile({1.0, 2.0, 3.0, 4.0}, 40.0) ==
          doctest::Approx(2.2).epsilon(1e-12));  // rank 1.2 between 2 and 3

    CHECK_THROWS_AS(percentile({}, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(percentile({1.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(percentile({1.0}, 100.5), std::invalid_argument);
}

TEST_CASE("distribution summaries aggregate the standard order statistics") {
    const DistributionSummary s = summarize_distribution({5.0, 3.0, 1.0, 2.0, 4.0});
    CHECK(s.min == 1.0);
    CHECK(s.max == 5.0);
    CHECK(s.mean == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.p50 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.p25 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.p75 == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(s.p2_5 == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(s.p97_5 == doctest::Approx(4.9).epsilon(1e-12));
}
