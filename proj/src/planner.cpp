#include "psplan/planner.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <utility>
#include <vector>

#include "psplan/dispatch.hpp"

namespace psplan {

SolveTally& solve_tally() {
    thread_local SolveTally tally;
    return tally;
}

namespace {

// Line-search budgets. Golden section shrinks the bracket by ~0.618 per step,
// so these push well past double precision; each step costs one pass over the
// timeseries.
constexpr int kOuterIters = 120;
constexpr int kInnerIters = 90;

struct ConvTech {
    int index;  // 0=baseload, 1=mid_merit, 2=peaking
    double c;
    double f;
};

struct ScreenOutcome {
    double cost = 0.0;
    std::array<double, 3> cap = {0.0, 0.0, 0.0};  // indexed by ConvTech::index
};

// Cheapest coverage of a weighted duration curve by the given technologies.
// The capacity slice [v, v+dv) runs whenever the requirement exceeds v, i.e.
// for u(v) = 8760 * (total weight of timesteps with level > v) hours per year,
// and goes to the technology minimizing c + f * u(v). Slice measures accumulate
// into per-technology capacities. `lw` holds (level, weight) pairs and is
// sorted in place.
ScreenOutcome screening_mix(std::vector<std::pair<double, double>>& lw,
                            const std::vector<ConvTech>& techs) {
    ScreenOutcome out;
    std::sort(lw.begin(), lw.end());
    if (techs.empty()) {
        if (!lw.empty() && lw.back().first > 0.0)
            throw SolverError("internal: positive residual with no technology to assign");
        return out;
    }
    double total = 0.0;
    for (const auto& e : lw) total += e.second;
    double shed = 0.0;  // weight of timesteps whose level lies below the segment
    double v_prev = 0.0;
    std::size_t i = 0;
    const std::size_t n = lw.size();
    while (i < n) {
        const double v = lw[i].first;
        if (v > v_prev) {
            const double u = kHoursPerYear * (total - shed);
            std::size_t best = 0;
            double best_cost = techs[0].c + techs[0].f * u;
            for (std::size_t j = 1; j < techs.size(); ++j) {
                const double cost_j = techs[j].c + techs[j].f * u;
                if (cost_j < best_cost) {
                    best = j;
                    best_cost = cost_j;
                }
            }
            out.cost += (v - v_prev) * best_cost;
            out.cap[static_cast<std::size_t>(techs[best].index)] += v - v_prev;
            v_prev = v;
        }
        while (i < n && lw[i].first == v) {
            shed += lw[i].second;
            ++i;
        }
    }
    return out;
}

// Golden-section minimum of a convex function on [lo, hi]. Returns the best
// evaluated interior point; callers add boundary candidates themselves.
template <typename F>
std::pair<double, double> golden_min(double lo, double hi, int iters, F&& f) {
    constexpr double invphi = 0.61803398874989484820;
    constexpr double invphi2 = 1.0 - invphi;
    if (!(hi > lo)) return {lo, f(lo)};
    double a = lo, b = hi;
    double x1 = a + invphi2 * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int k = 0; k < iters && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++k) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + invphi2 * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::pair<double, double>{x1, f1} : std::pair<double, double>{x2, f2};
}

struct EvalContext {
    const WeightedTimeseries& ts;
    const TechnologyParams& params;
    std::vector<ConvTech> class_a;  // generation cost <= wind's: dispatched before wind
    std::vector<ConvTech> class_b;  // generation cost > wind's: dispatched after wind
    // Weights rescaled to sum to 1, so utilization hours stay in [0, 8760] and
    // the chosen capacities do not depend on the scale of the input weights.
    std::vector<double> norm_weight;
    double max_demand = 0.0;
    long long evals = 0;
    std::vector<std::pair<double, double>> scratch_a;
    std::vector<std::pair<double, double>> scratch_b;
};

EvalContext make_context(const WeightedTimeseries& ts, const TechnologyParams& params) {
    EvalContext ctx{ts, params};
    double weight_sum = 0.0;
    for (const double w : ts.weight) weight_sum += w;
    ctx.norm_weight.reserve(ts.size());
    for (const double w : ts.weight) ctx.norm_weight.push_back(w / weight_sum);
    const ConvTech conv[3] = {{0, params.baseload.install_cost, params.baseload.gen_cost},
                              {1, params.mid_merit.install_cost, params.mid_merit.gen_cost},
                              {2, params.peaking.install_cost, params.peaking.gen_cost}};
    for (const ConvTech& t : conv) {
        if (t.f <= params.wind.gen_cost)
            ctx.class_a.push_back(t);
        else
            ctx.class_b.push_back(t);
    }
    const auto by_merit = [](const ConvTech& x, const ConvTech& y) {
        return x.f < y.f || (x.f == y.f && x.index < y.index);
    };
    std::sort(ctx.class_a.begin(), ctx.class_a.end(), by_merit);
    std::sort(ctx.class_b.begin(), ctx.class_b.end(), by_merit);
    for (const double d : ts.demand_gw) ctx.max_demand = std::max(ctx.max_demand, d);
    ctx.scratch_a.reserve(ts.size());
    ctx.scratch_b.reserve(ts.size());
    return ctx;
}

// Conventional + wind-energy cost when wind is first in the merit order (no
// conventional technology generates more cheaply than wind).
double eval_wind_first(EvalContext& ctx, double cap_w, ScreenOutcome* conv_out) {
    ++ctx.evals;
    const auto& d = ctx.ts.demand_gw;
    const auto& w = ctx.ts.wind_cf;
    const auto& lam = ctx.norm_weight;
    auto& lb = ctx.scratch_b;
    lb.clear();
    double wind_energy = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) {
        const double avail = cap_w * w[t];
        const double g = std::min(d[t], avail);
        wind_energy += lam[t] * g;
        lb.emplace_back(d[t] - g, lam[t]);
    }
    const ScreenOutcome conv = screening_mix(lb, ctx.class_b);
    if (conv_out) *conv_out = conv;
    return kHoursPerYear * ctx.params.wind.gen_cost * wind_energy + conv.cost;
}

// Conventional + wind-energy cost when a block of cheap conventional capacity
// of total size `gamma` is dispatched before wind and the rest after it.
double eval_split(EvalContext& ctx, double cap_w, double gamma, ScreenOutcome* a_out,
                  ScreenOutcome* b_out) {
    ++ctx.evals;
    const auto& d = ctx.ts.demand_gw;
    const auto& w = ctx.ts.wind_cf;
    const auto& lam = ctx.norm_weight;
    auto& la = ctx.scratch_a;
    auto& lb = ctx.scratch_b;
    la.clear();
    lb.clear();
    const bool has_b = !ctx.class_b.empty();
    double wind_energy = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) {
        la.emplace_back(std::min(d[t], gamma), lam[t]);
        const double rem = std::max(0.0, d[t] - gamma);
        const double g = std::min(rem, cap_w * w[t]);
        wind_energy += lam[t] * g;
        if (has_b) lb.emplace_back(rem - g, lam[t]);
    }
    double cost = kHoursPerYear * ctx.params.wind.gen_cost * wind_energy;
    const ScreenOutcome a = screening_mix(la, ctx.class_a);
    cost += a.cost;
    if (a_out) *a_out = a;
    if (has_b) {
        const ScreenOutcome b = screening_mix(lb, ctx.class_b);
        cost += b.cost;
        if (b_out) *b_out = b;
    } else if (b_out) {
        *b_out = ScreenOutcome{};
    }
    return cost;
}

// Full system cost at a fixed wind capacity, optimizing the conventional mix.
// When requested, also reports the optimal conventional capacities.
double eval_fixed_wind(EvalContext& ctx, double cap_w, std::array<double, 3>* caps_out) {
    const double wind_install = ctx.params.wind.install_cost * cap_w;
    if (ctx.class_a.empty()) {
        ScreenOutcome conv;
        const double cost = eval_wind_first(ctx, cap_w, caps_out ? &conv : nullptr);
        if (caps_out) *caps_out = conv.cap;
        return wind_install + cost;
    }
    double lo = 0.0;
    const double hi = ctx.max_demand;
    if (ctx.class_b.empty()) {
        // Wind is the most expensive source, so the pre-wind block alone must
        // cover the worst hour's residual after wind.
        for (std::size_t t = 0; t < ctx.ts.size(); ++t)
            lo = std::max(lo, ctx.ts.demand_gw[t] - cap_w * ctx.ts.wind_cf[t]);
        lo = std::max(lo, 0.0);
    }
    double gamma = lo;
    double best = eval_split(ctx, cap_w, lo, nullptr, nullptr);
    if (hi > lo) {
        const auto [gx, fx] =
            golden_min(lo, hi, kInnerIters,
                       [&](double g) { return eval_split(ctx, cap_w, g, nullptr, nullptr); });
        if (fx < best) {
            best = fx;
            gamma = gx;
        }
        const double fhi = eval_split(ctx, cap_w, hi, nullptr, nullptr);
        if (fhi < best) {
            best = fhi;
            gamma = hi;
        }
    }
    if (caps_out) {
        ScreenOutcome a, b;
        best = eval_split(ctx, cap_w, gamma, &a, &b);
        for (std::size_t i = 0; i < 3; ++i) (*caps_out)[i] = a.cap[i] + b.cap[i];
    }
    return wind_install + best;
}

PlanSolution assemble(EvalContext& ctx, double cap_w) {
    std::array<double, 3> caps = {0.0, 0.0, 0.0};
    eval_fixed_wind(ctx, cap_w, &caps);
    SystemDesign design;
    design.baseload_gw = caps[0];
    design.mid_merit_gw = caps[1];
    design.peaking_gw = caps[2];
    design.wind_gw = cap_w;
    DispatchResult dispatch = dispatch_fixed(ctx.ts, ctx.params, design);

    // Rounding in the capacity segments can leave sub-ulp residues at the
    // binding peak hour; absorb them into the last-dispatched conventional
    // technology. Anything material would mean a planner bug, not rounding.
    const ConvTech& last = ctx.class_b.empty() ? ctx.class_a.back() : ctx.class_b.back();
    double* last_cap = last.index == 0   ? &design.baseload_gw
                       : last.index == 1 ? &design.mid_merit_gw
                                         : &design.peaking_gw;
    for (int pass = 0; pass < 3; ++pass) {
        double worst = 0.0;
        for (const double u : dispatch.unserved_gwh) worst = std::max(worst, u);
        if (worst <= 0.0) break;
        if (worst > 1e-6 * std::max(1.0, ctx.max_demand))
            throw SolverError("planner left " + std::to_string(worst) + " GWh unserved");
        *last_cap += worst;
        dispatch = dispatch_fixed(ctx.ts, ctx.params, design);
    }

    PlanSolution sol;
    sol.design = design;
    sol.objective_cost = objective_value(ctx.ts, ctx.params, design, dispatch);
    sol.dispatch = std::move(dispatch);
    sol.diagnostics.iterations =
        static_cast<int>(std::min<long long>(ctx.evals, static_cast<long long>(INT_MAX)));
    sol.diagnostics.status = "optimal";
    return sol;
}

void count_call(const WeightedTimeseries& ts) {
    solve_tally().plan_calls += 1;
    solve_tally().plan_timesteps += static_cast<long long>(ts.size());
}

}  // namespace

PlanSolution plan_capacity(const WeightedTimeseries& ts, const TechnologyParams& params) {
    count_call(ts);
    ts.validate(false);
    params.validate();
    EvalContext ctx = make_context(ts, params);
    const auto G = [&](double cw) { return eval_fixed_wind(ctx, cw, nullptr); };

    const double at_zero = G(0.0);
    double bracket = std::max(1.0, ctx.max_demand);
    double at_bracket = G(bracket);
    for (int k = 0; k < 60; ++k) {
        const double at_double = G(2.0 * bracket);
        if (!(at_double < at_bracket - 1e-12 * std::max(1.0, std::abs(at_bracket)))) break;
        bracket *= 2.0;
        at_bracket = at_double;
    }
    auto [best_w, best_cost] = golden_min(0.0, 2.0 * bracket, kOuterIters, G);
    // Prefer an exact zero when idle wind would cost the same to our precision.
    if (at_zero <= best_cost + 1e-12 * std::max(1.0, std::abs(best_cost))) best_w = 0.0;
    return assemble(ctx, best_w);
}

PlanSolution plan_capacity_fixed_wind(const WeightedTimeseries& ts, const TechnologyParams& params,
                                      double wind_gw) {
    count_call(ts);
    ts.validate(false);
    params.validate();
    if (!(std::isfinite(wind_gw) && wind_gw >= 0.0))
        throw std::invalid_argument("plan_capacity_fixed_wind: wind_gw must be finite and >= 0");
    EvalContext ctx = make_context(ts, params);
    return assemble(ctx, wind_gw);
}

}  // namespace psplan
