// Command-line front end: dataset synthesis, capacity planning, subsampling,
// design evaluation, and the sampler-comparison experiment driver.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psplan/clustering.hpp"
#include "psplan/evaluation.hpp"
#include "psplan/experiment.hpp"
#include "psplan/params_io.hpp"
#include "psplan/planner.hpp"
#include "psplan/sampling.hpp"
#include "psplan/synth.hpp"
#include "psplan/timeseries_io.hpp"
#include "psplan/types.hpp"

namespace {

using namespace psplan;

// Remembered so the error handler can match the requested output format.
std::string g_format = "csv";

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << text;
}

TechnologyParams load_costs_or_default(const std::string& path) {
    return path.empty() ? TechnologyParams{} : load_tech_params(path);
}

nlohmann::json design_json(const SystemDesign& d) {
    return {{"baseload_gw", d.baseload_gw},
            {"mid_merit_gw", d.mid_merit_gw},
            {"peaking_gw", d.peaking_gw},
            {"wind_gw", d.wind_gw}};
}

std::string plan_output(const PlanSolution& sol, const std::string& format) {
    if (format == "json") {
        nlohmann::json doc;
        doc["design"] = design_json(sol.design);
        doc["objective_cost"] = sol.objective_cost;
        doc["iterations"] = sol.diagnostics.iterations;
        doc["status"] = sol.diagnostics.status;
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "baseload_gw,mid_merit_gw,peaking_gw,wind_gw,objective_cost\n"
        << format_double(sol.design.baseload_gw) << ','
        << format_double(sol.design.mid_merit_gw) << ','
        << format_double(sol.design.peaking_gw) << ',' << format_double(sol.design.wind_gw)
        << ',' << format_double(sol.objective_cost) << '\n';
    return out.str();
}

void add_synth(CLI::App& app) {
    auto* cmd = app.add_subcommand("synth", "Generate a synthetic demand/wind dataset");
    auto config = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto years = std::make_shared<int>(0);
    auto start_year = std::make_shared<int>(0);
    cmd->add_option("--config", *config, "synthesis settings file (key = value)");
    auto* seed_opt = cmd->add_option("--seed", *seed, "override the synthesis seed");
    auto* years_opt = cmd->add_option("--years", *years, "override the number of years");
    auto* start_opt = cmd->add_option("--start-year", *start_year, "override the first year");
    cmd->add_option("--out", *out, "output dataset CSV")->required();
    cmd->callback([=]() {
        SynthConfig cfg = config->empty() ? SynthConfig{} : load_synth_config(*config);
        if (seed_opt->count()) cfg.seed = *seed;
        if (years_opt->count()) cfg.n_years = *years;
        if (start_opt->count()) cfg.start_year = *start_year;
        WeightedTimeseries ts = build_dataset(cfg);
        save_timeseries_csv(ts, *out);
        std::cout << "wrote " << *out << ": " << ts.size() << " timesteps, years "
                  << cfg.start_year << "-" << (cfg.start_year + cfg.n_years - 1) << "\n";
    });
}

void add_plan(CLI::App& app) {
    auto* cmd = app.add_subcommand("plan", "Find the cost-optimal capacity mix");
    auto data = std::make_shared<std::string>();
    auto costs = std::make_shared<std::string>();
    auto sample = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    auto fixed_wind = std::make_shared<double>(0.0);
    cmd->add_option("--data", *data, "dataset CSV")->required();
    cmd->add_option("--costs", *costs, "technology cost file");
    cmd->add_option("--sample", *sample, "subsample CSV to plan against");
    auto* wind_opt = cmd->add_option("--fixed-wind", *fixed_wind, "hold wind capacity at this GW");
    cmd->add_option("--out", *out, "output file (default: stdout)");
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([=]() {
        g_format = *format;
        WeightedTimeseries ts = load_timeseries_csv(*data);
        if (!sample->empty()) {
            Subsample sub = load_subsample_csv(*sample);
            sub.validate(static_cast<std::int64_t>(ts.size()));
            ts = sub.apply(ts);
        }
        TechnologyParams params = load_costs_or_default(*costs);
        PlanSolution sol = wind_opt->count() ? plan_capacity_fixed_wind(ts, params, *fixed_wind)
                                             : plan_capacity(ts, params);
        write_text(plan_output(sol, *format), *out);
    });
}

void add_sample(CLI::App& app) {
    auto* cmd = app.add_subcommand("sample", "Draw a weighted subsample of a dataset");
    auto data = std::make_shared<std::string>();
    auto costs = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto size = std::make_shared<std::int64_t>(0);
    auto year = std::make_shared<int>(0);
    auto n_high = std::make_shared<std::int64_t>(60);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto compute_equivalent = std::make_shared<bool>(true);
    cmd->add_option("--data", *data, "dataset CSV")->required();
    cmd->add_option("--method", *method, "sampler")
        ->required()
        ->check(CLI::IsMember({"random", "importance", "individual_year",
                               "representative_days"}));
    auto* size_opt =
        cmd->add_option("--size", *size, "sample size in timesteps (compute budget)");
    auto* year_opt = cmd->add_option("--year", *year, "calendar year (individual_year)");
    cmd->add_option("--n-high", *n_high, "forced high-importance timesteps (importance)");
    cmd->add_option("--seed", *seed, "sampler seed");
    cmd->add_flag("--compute-equivalent,!--no-compute-equivalent", *compute_equivalent,
                  "importance runs two half-size stages so total solve work matches --size");
    cmd->add_option("--costs", *costs, "technology cost file (importance)");
    cmd->add_option("--out", *out, "output subsample CSV")->required();
    cmd->callback([=]() {
        WeightedTimeseries ts = load_timeseries_csv(*data);
        SamplerKind kind = sampler_kind_from_string(*method);
        if (kind != SamplerKind::individual_year && !size_opt->count())
            throw std::invalid_argument("sample: --size is required for this method");
        Subsample sub;
        switch (kind) {
            case SamplerKind::random:
                sub = random_subsample(ts, *size, *seed);
                break;
            case SamplerKind::individual_year:
                if (!year_opt->count())
                    throw std::invalid_argument("sample: --year is required for individual_year");
                sub = individual_year(ts, *year);
                break;
            case SamplerKind::importance: {
                SamplerConfig cfg;
                cfg.n_full = static_cast<std::int64_t>(ts.size());
                cfg.n_sample = *compute_equivalent ? *size / 2 : *size;
                cfg.n_high = *n_high;
                cfg.rng_seed = *seed;
                cfg.kind = SamplerKind::importance;
                if (*compute_equivalent && *size % 2 != 0)
                    throw std::invalid_argument(
                        "sample: compute-equivalent importance needs an even --size");
                TechnologyParams params = load_costs_or_default(*costs);
                sub = importance_subsample(ts, params, cfg).first;
                break;
            }
            case SamplerKind::representative_days: {
                if (*size % 24 != 0)
                    throw std::invalid_argument(
                        "sample: representative_days needs --size in whole days "
                        "(multiples of 24)");
                std::vector<DayVector> days = build_day_vectors(ts);
                ClusterModel model = cluster_days(days, *size / 24, *seed);
                sub = representative_subsample(ts, model);
                break;
            }
        }
        save_subsample_csv(sub, *out);
        std::cout << "wrote " << *out << ": " << sub.size() << " of " << ts.size()
                  << " timesteps\n";
    });
}

void add_evaluate(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "Score a fixed design against a dataset");
    auto data = std::make_shared<std::string>();
    auto costs = std::make_shared<std::string>();
    auto design_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    cmd->add_option("--data", *data, "dataset CSV")->required();
    cmd->add_option("--design", *design_path, "design JSON file")->required();
    cmd->add_option("--costs", *costs, "technology cost file");
    cmd->add_option("--out", *out, "output file (default: stdout)");
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([=]() {
        g_format = *format;
        WeightedTimeseries ts = load_timeseries_csv(*data);
        TechnologyParams params = load_costs_or_default(*costs);
        SystemDesign design = load_design_json(*design_path);
        AdequacyReport shortage = adequacy(ts, params, design);
        CostReport cost = extra_system_cost(ts, params, design);
        if (*format == "json") {
            nlohmann::json doc;
            doc["design"] = design_json(design);
            doc["adequacy"] = {{"hours_unmet", shortage.hours_unmet},
                               {"unserved_energy_gwh", shortage.unserved_energy_gwh},
                               {"max_shortfall_gw", shortage.max_shortfall_gw}};
            nlohmann::json per_year = nlohmann::json::array();
            for (const auto& y : shortage.per_year) {
                per_year.push_back({{"year", y.year},
                                    {"hours_unmet", y.hours_unmet},
                                    {"unserved_energy_gwh", y.unserved_energy_gwh},
                                    {"max_shortfall_gw", y.max_shortfall_gw}});
            }
            doc["adequacy"]["per_year"] = per_year;
            doc["cost"] = {{"system_cost", cost.system_cost},
                           {"optimal_cost", cost.optimal_cost},
                           {"extra_system_cost", cost.extra_system_cost},
                           {"extra_peaking_added_gw", cost.extra_peaking_added_gw}};
            write_text(doc.dump(2) + "\n", *out);
        } else {
            std::ostringstream s;
            s << "hours_unmet,unserved_energy_gwh,max_shortfall_gw,system_cost,optimal_cost,"
                 "extra_system_cost,extra_peaking_added_gw\n"
              << shortage.hours_unmet << ',' << format_double(shortage.unserved_energy_gwh)
              << ',' << format_double(shortage.max_shortfall_gw) << ','
              << format_double(cost.system_cost) << ',' << format_double(cost.optimal_cost)
              << ',' << format_double(cost.extra_system_cost) << ','
              << format_double(cost.extra_peaking_added_gw) << '\n';
            write_text(s.str(), *out);
        }
    });
}

void add_matrix(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "matrix", "Plan each year alone and count unmet hours on every other year");
    auto data = std::make_shared<std::string>();
    auto costs = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    cmd->add_option("--data", *data, "dataset CSV")->required();
    cmd->add_option("--costs", *costs, "technology cost file");
    cmd->add_option("--out", *out, "output file (default: stdout)");
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([=]() {
        g_format = *format;
        WeightedTimeseries ts = load_timeseries_csv(*data);
        TechnologyParams params = load_costs_or_default(*costs);
        CrossYearMatrix m = cross_year_matrix(ts, params);
        if (*format == "json") {
            nlohmann::json doc;
            doc["years"] = m.years;
            doc["hours_unmet"] = m.hours;
            write_text(doc.dump(2) + "\n", *out);
        } else {
            std::ostringstream s;
            s << "plan_year,eval_year,hours_unmet\n";
            for (std::size_t i = 0; i < m.years.size(); ++i)
                for (std::size_t j = 0; j < m.years.size(); ++j)
                    s << m.years[i] << ',' << m.years[j] << ',' << m.hours[i][j] << '\n';
            write_text(s.str(), *out);
        }
    });
}

void add_windcurve(CLI::App& app) {
    auto* cmd =
        app.add_subcommand("windcurve", "Optimal system cost at each fixed wind capacity");
    auto data = std::make_shared<std::string>();
    auto costs = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    auto grid = std::make_shared<std::vector<double>>();
    auto lo = std::make_shared<double>(0.0);
    auto hi = std::make_shared<double>(40.0);
    auto steps = std::make_shared<int>(21);
    cmd->add_option("--data", *data, "dataset CSV")->required();
    cmd->add_option("--costs", *costs, "technology cost file");
    auto* grid_opt = cmd->add_option("--grid", *grid, "explicit wind capacities (GW)");
    cmd->add_option("--min", *lo, "grid start (GW)");
    cmd->add_option("--max", *hi, "grid end (GW)");
    cmd->add_option("--steps", *steps, "grid point count");
    cmd->add_option("--out", *out, "output file (default: stdout)");
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([=]() {
        g_format = *format;
        WeightedTimeseries ts = load_timeseries_csv(*data);
        TechnologyParams params = load_costs_or_default(*costs);
        std::vector<double> points = *grid;
        if (!grid_opt->count()) {
            if (*steps < 2) throw std::invalid_argument("windcurve: --steps must be at least 2");
            if (*hi <= *lo) throw std::invalid_argument("windcurve: --max must exceed --min");
            points.clear();
            for (int i = 0; i < *steps; ++i)
                points.push_back(*lo + (*hi - *lo) * i / (*steps - 1));
        }
        auto curve = wind_cost_curve(ts, params, points);
        if (*format == "json") {
            nlohmann::json doc = nlohmann::json::array();
            for (const auto& [w, c] : curve)
                doc.push_back({{"wind_gw", w}, {"system_cost", c}});
            write_text(doc.dump(2) + "\n", *out);
        } else {
            std::ostringstream s;
            s << "wind_gw,system_cost\n";
            for (const auto& [w, c] : curve)
                s << format_double(w) << ',' << format_double(c) << '\n';
            write_text(s.str(), *out);
        }
    });
}

void add_experiment(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "experiment", "Run a sampler-comparison study from a config file");
    auto config = std::make_shared<std::string>();
    auto data = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>();
    auto jobs = std::make_shared<int>(1);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto compute_equivalent = std::make_shared<bool>(true);
    cmd->add_option("--config", *config, "experiment config file")->required();
    cmd->add_option("--data", *data, "override the dataset path");
    cmd->add_option("--out", *out_dir, "override the output directory");
    cmd->add_option("--jobs", *jobs, "worker threads (outputs are identical for any value)");
    auto* seed_opt = cmd->add_option("--seed", *seed, "override the base seed");
    auto* ce_opt =
        cmd->add_flag("--compute-equivalent,!--no-compute-equivalent", *compute_equivalent,
                      "override the compute-equivalent setting");
    cmd->callback([=]() {
        ExperimentPlan plan = ExperimentPlan::from_config_file(*config);
        if (!data->empty()) plan.dataset_path = *data;
        if (!out_dir->empty()) plan.out_dir = *out_dir;
        if (seed_opt->count()) plan.base_seed = *seed;
        if (ce_opt->count()) plan.compute_equivalent = *compute_equivalent;
        plan.validate();

        WeightedTimeseries ts = load_timeseries_csv(plan.dataset_path);
        TechnologyParams params = load_costs_or_default(plan.tech_params_path);
        ExperimentResult result = run_experiment(plan, ts, params, *jobs);

        std::filesystem::create_directories(plan.out_dir);
        const std::filesystem::path dir(plan.out_dir);
        write_results_csv(result, (dir / "results.csv").string());
        write_summary_csv(summarize_experiment(result), (dir / "summary.csv").string());
        write_meta_json(plan, result, (dir / "meta.json").string());
        write_timings_csv(result, (dir / "timings.csv").string());

        std::size_t failed = 0;
        for (const auto& r : result.rows) failed += r.ok() ? 0 : 1;
        std::cout << "wrote " << plan.out_dir << ": " << result.rows.size() << " replicates";
        if (failed > 0) std::cout << ", " << failed << " failed";
        std::cout << "\n";
        if (failed > 0) throw SolverError("experiment: " + std::to_string(failed) +
                                          " replicate(s) failed; see results.csv status column");
    });
}

void add_summarize(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "summarize", "Rebuild the percentile summary from an experiment directory");
    auto dir = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    cmd->add_option("--dir", *dir, "experiment output directory")->required();
    cmd->add_option("--out", *out, "output file (default: stdout)");
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([=]() {
        g_format = *format;
        const std::filesystem::path base(*dir);
        ExperimentResult result = load_experiment_output((base / "results.csv").string(),
                                                         (base / "meta.json").string());
        std::vector<SummaryRow> rows = summarize_experiment(result);
        if (*format == "json") {
            nlohmann::json doc = nlohmann::json::array();
            for (const auto& r : rows) {
                doc.push_back({{"sampler", r.sampler},
                               {"sample_size", r.sample_size},
                               {"metric", r.metric},
                               {"count", r.count},
                               {"mean", r.stats.mean},
                               {"min", r.stats.min},
                               {"p2_5", r.stats.p2_5},
                               {"p25", r.stats.p25},
                               {"p50", r.stats.p50},
                               {"p75", r.stats.p75},
                               {"p97_5", r.stats.p97_5},
                               {"max", r.stats.max},
                               {"bias", r.bias}});
            }
            write_text(doc.dump(2) + "\n", *out);
        } else {
            write_text(summary_csv(rows), *out);
        }
    });
}

void emit_error(const std::string& type, const std::string& message) {
    if (g_format == "json") {
        nlohmann::json doc;
        doc["error"] = {{"type", type}, {"message", message}};
        std::cerr << doc.dump(2) << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psplan: generation capacity planning from demand/wind timeseries"};
    app.require_subcommand(1);
    add_synth(app);
    add_plan(app);
    add_sample(app);
    add_evaluate(app);
    add_matrix(app);
    add_windcurve(app);
    add_experiment(app);
    add_summarize(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const psplan::SolverError& e) {
        emit_error("solver", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("validation", e.what());
        return 1;
    }
    return 0;
}
