#include "psplan/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "psplan/clustering.hpp"
#include "psplan/kv_config.hpp"
#include "psplan/planner.hpp"
#include "psplan/rng.hpp"
#include "psplan/timeseries_io.hpp"

namespace psplan {

namespace {

ExperimentEntry parse_run_entry(std::string value, const std::string& where) {
    ExperimentEntry entry;
    // Allow spaces around the ':' separators.
    value.erase(std::remove_if(value.begin(), value.end(),
                               [](unsigned char c) { return c == ' ' || c == '\t'; }),
                value.end());
    std::istringstream in(value);
    std::string kind, size, reps;
    if (!std::getline(in, kind, ':') || !std::getline(in, size, ':') ||
        !std::getline(in, reps)) {
        throw std::invalid_argument(where + ": run entry must be kind:size:replicates, got \"" +
                                    value + "\"");
    }
    entry.kind = sampler_kind_from_string(kind);
    entry.sample_size = static_cast<std::int64_t>(KvFile::parse_int(size, where));
    entry.replicates = static_cast<int>(KvFile::parse_int(reps, where));
    return entry;
}

}  // namespace

ExperimentPlan ExperimentPlan::from_config_file(const std::string& path) {
    KvFile kv = KvFile::parse_file(path);
    ExperimentPlan plan;
    plan.dataset_path = kv.get("dataset");  // mandatory: a study needs its data
    plan.tech_params_path = kv.get_or("tech_costs", "");
    plan.base_seed = static_cast<std::uint64_t>(kv.get_int_or("base_seed", 42));
    plan.compute_equivalent = kv.get_bool_or("compute_equivalent", true);
    plan.n_high = kv.get_int_or("n_high", 60);
    plan.out_dir = kv.get_or("out_dir", ".");
    for (const auto& entry : kv.entries_for("run")) {
        plan.entries.push_back(
            parse_run_entry(entry.value, path + ":" + std::to_string(entry.line)));
    }
    plan.validate();
    return plan;
}

void ExperimentPlan::validate() const {
    if (entries.empty()) throw std::invalid_argument("experiment: at least one run entry required");
    if (n_high <= 0) throw std::invalid_argument("experiment: n_high must be positive");
    for (const auto& e : entries) {
        if (e.sample_size <= 0)
            throw std::invalid_argument("experiment: sample size must be positive");
        if (e.replicates <= 0)
            throw std::invalid_argument("experiment: replicate count must be positive");
        if (e.kind == SamplerKind::importance) {
            std::int64_t per_stage = compute_equivalent ? e.sample_size / 2 : e.sample_size;
            if (compute_equivalent && e.sample_size % 2 != 0)
                throw std::invalid_argument(
                    "experiment: compute-equivalent importance runs need an even sample size");
            if (per_stage <= n_high)
                throw std::invalid_argument(
                    "experiment: importance stage size must exceed n_high (" +
                    std::to_string(per_stage) + " <= " + std::to_string(n_high) + ")");
        }
        if (e.kind == SamplerKind::representative_days && e.sample_size % 24 != 0)
            throw std::invalid_argument(
                "experiment: representative-day sample sizes must be whole days (multiples of 24)");
    }
}

std::uint64_t replicate_seed(std::uint64_t base, SamplerKind kind, std::int64_t size,
                             int replicate) {
    std::uint64_t s = derive_seed(base, hash_label(to_string(kind)));
    s = derive_seed(s, static_cast<std::uint64_t>(size));
    return derive_seed(s, static_cast<std::uint64_t>(replicate));
}

namespace {

struct TaskSpec {
    SamplerKind kind = SamplerKind::random;
    std::int64_t nominal_size = 0;
    int replicate = 0;
    int year = 0;  // individual_year only
};

// Shared read-only context for all replicates of one experiment.
struct RunContext {
    const ExperimentPlan& plan;
    const WeightedTimeseries& ts;
    const TechnologyParams& params;
    const PlanSolution& optimal;
    const std::vector<DayVector>& day_vectors;
};

ReplicateResult run_one(const RunContext& ctx, const TaskSpec& task) {
    ReplicateResult row;
    row.sampler = to_string(task.kind);
    row.sample_size = task.nominal_size;
    row.replicate = task.replicate;
    row.seed = replicate_seed(ctx.plan.base_seed, task.kind, task.nominal_size, task.replicate);

    auto started = std::chrono::steady_clock::now();
    try {
        PlanSolution sol;
        {
            ScopedSolveTally tally;
            switch (task.kind) {
                case SamplerKind::random: {
                    Subsample sub = random_subsample(ctx.ts, task.nominal_size, row.seed);
                    sol = plan_capacity(sub.apply(ctx.ts), ctx.params);
                    break;
                }
                case SamplerKind::individual_year: {
                    Subsample sub = individual_year(ctx.ts, task.year);
                    sol = plan_capacity(sub.apply(ctx.ts), ctx.params);
                    break;
                }
                case SamplerKind::importance: {
                    SamplerConfig cfg;
                    cfg.n_full = static_cast<std::int64_t>(ctx.ts.size());
                    cfg.n_sample = ctx.plan.compute_equivalent ? task.nominal_size / 2
                                                               : task.nominal_size;
                    cfg.n_high = ctx.plan.n_high;
                    cfg.rng_seed = row.seed;
                    cfg.kind = SamplerKind::importance;
                    auto [sub, stage1] = importance_subsample(ctx.ts, ctx.params, cfg);
                    (void)stage1;
                    sol = plan_capacity(sub.apply(ctx.ts), ctx.params);
                    break;
                }
                case SamplerKind::representative_days: {
                    std::int64_t k = task.nominal_size / 24;
                    ClusterModel model = cluster_days(ctx.day_vectors, k, row.seed);
                    Subsample sub = representative_subsample(ctx.ts, model);
                    sol = plan_capacity(sub.apply(ctx.ts), ctx.params);
                    break;
                }
            }
            row.effective_compute = tally.current().plan_timesteps;
        }
        row.design = sol.design;
        row.objective_cost = sol.objective_cost;

        AdequacyReport shortage = adequacy(ctx.ts, ctx.params, sol.design);
        row.hours_unmet = shortage.hours_unmet;
        row.unserved_energy_gwh = shortage.unserved_energy_gwh;
        row.max_shortfall_gw = shortage.max_shortfall_gw;
        row.extra_system_cost =
            extra_system_cost(ctx.ts, ctx.params, sol.design, ctx.optimal).extra_system_cost;
        row.status = "ok";
    } catch (const std::exception& err) {
        row.status = std::string("error: ") + err.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            started)
                      .count();
    return row;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, const WeightedTimeseries& ts,
                                const TechnologyParams& params, int jobs) {
    plan.validate();
    ts.validate();
    params.validate();
    if (jobs < 1) throw std::invalid_argument("experiment: jobs must be at least 1");

    ExperimentResult result;
    result.n_full = static_cast<std::int64_t>(ts.size());
    // The reference plan is scored once, outside every replicate's compute tally.
    result.optimal = plan_capacity(ts.reweighted_equal(), params);

    bool wants_clusters = false;
    bool wants_years = false;
    for (const auto& e : plan.entries) {
        wants_clusters = wants_clusters || e.kind == SamplerKind::representative_days;
        wants_years = wants_years || e.kind == SamplerKind::individual_year;
    }
    std::vector<DayVector> day_vectors;
    if (wants_clusters) day_vectors = build_day_vectors(ts);
    std::vector<int> years;
    if (wants_years) {
        if (!ts.has_time())
            throw std::invalid_argument("experiment: individual-year runs need timestamped data");
        years = ts.distinct_years();
    }

    std::vector<TaskSpec> tasks;
    for (const auto& e : plan.entries) {
        if (e.kind == SamplerKind::individual_year) {
            // One replicate per calendar year; the configured count caps how many.
            int n = std::min<int>(e.replicates, static_cast<int>(years.size()));
            for (int i = 0; i < n; ++i)
                tasks.push_back({e.kind, e.sample_size, i, years[static_cast<std::size_t>(i)]});
        } else {
            for (int i = 0; i < e.replicates; ++i) tasks.push_back({e.kind, e.sample_size, i, 0});
        }
    }

    result.rows.resize(tasks.size());
    RunContext ctx{plan, ts, params, result.optimal, day_vectors};

    int n_workers = std::min<int>(jobs, static_cast<int>(tasks.size()));
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) result.rows[i] = run_one(ctx, tasks[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                result.rows[i] = run_one(ctx, tasks[i]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return result;
}

namespace {

struct MetricSpec {
    const char* name;
    double (*pick)(const ReplicateResult&);
    double (*reference)(const PlanSolution&);
};

const MetricSpec kMetrics[] = {
    {"baseload_gw", [](const ReplicateResult& r) { return r.design.baseload_gw; },
     [](const PlanSolution& o) { return o.design.baseload_gw; }},
    {"mid_merit_gw", [](const ReplicateResult& r) { return r.design.mid_merit_gw; },
     [](const PlanSolution& o) { return o.design.mid_merit_gw; }},
    {"peaking_gw", [](const ReplicateResult& r) { return r.design.peaking_gw; },
     [](const PlanSolution& o) { return o.design.peaking_gw; }},
    {"wind_gw", [](const ReplicateResult& r) { return r.design.wind_gw; },
     [](const PlanSolution& o) { return o.design.wind_gw; }},
    {"objective_cost", [](const ReplicateResult& r) { return r.objective_cost; },
     [](const PlanSolution& o) { return o.objective_cost; }},
    {"hours_unmet", [](const ReplicateResult& r) { return static_cast<double>(r.hours_unmet); },
     [](const PlanSolution&) { return 0.0; }},
    {"extra_system_cost", [](const ReplicateResult& r) { return r.extra_system_cost; },
     [](const PlanSolution&) { return 0.0; }},
};

}  // namespace

std::vector<SummaryRow> summarize_experiment(const ExperimentResult& result) {
    if (result.rows.empty())
        throw std::invalid_argument("summarize: experiment produced no replicates");

    // Group keys in first-appearance order so the summary mirrors the run plan.
    std::vector<std::pair<std::string, std::int64_t>> groups;
    for (const auto& row : result.rows) {
        std::pair<std::string, std::int64_t> key{row.sampler, row.sample_size};
        bool seen = false;
        for (const auto& g : groups) seen = seen || g == key;
        if (!seen) groups.push_back(key);
    }

    std::vector<SummaryRow> out;
    for (const auto& [sampler, size] : groups) {
        for (const auto& metric : kMetrics) {
            std::vector<double> values;
            for (const auto& row : result.rows) {
                if (row.sampler == sampler && row.sample_size == size && row.ok())
                    values.push_back(metric.pick(row));
            }
            if (values.empty()) continue;
            SummaryRow srow;
            srow.sampler = sampler;
            srow.sample_size = size;
            srow.metric = metric.name;
            srow.count = static_cast<int>(values.size());
            srow.stats = summarize_distribution(values);
            srow.bias = srow.stats.p50 - metric.reference(result.optimal);
            out.push_back(std::move(srow));
        }
    }
    return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double field_double(const std::string& s, const std::string& where) {
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        throw std::invalid_argument(where + ": '" + s + "' is not a number");
    return x;
}

long long field_int(const std::string& s, const std::string& where) {
    char* end = nullptr;
    errno = 0;
    const long long x = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        throw std::invalid_argument(where + ": '" + s + "' is not an integer");
    return x;
}

}  // namespace

ExperimentResult load_experiment_output(const std::string& results_csv_path,
                                        const std::string& meta_json_path) {
    ExperimentResult result;

    std::ifstream meta_in(meta_json_path);
    if (!meta_in) throw std::invalid_argument("cannot open " + meta_json_path);
    nlohmann::json meta = nlohmann::json::parse(meta_in);
    result.n_full = meta.at("n_timesteps").get<std::int64_t>();
    const auto& opt = meta.at("optimal");
    result.optimal.design.baseload_gw = opt.at("baseload_gw").get<double>();
    result.optimal.design.mid_merit_gw = opt.at("mid_merit_gw").get<double>();
    result.optimal.design.peaking_gw = opt.at("peaking_gw").get<double>();
    result.optimal.design.wind_gw = opt.at("wind_gw").get<double>();
    result.optimal.objective_cost = opt.at("objective_cost").get<double>();

    std::ifstream in(results_csv_path);
    if (!in) throw std::invalid_argument("cannot open " + results_csv_path);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument(results_csv_path + ": empty file");
    const std::string expected =
        "sampler,sample_size,replicate,seed,effective_compute,baseload_gw,mid_merit_gw,"
        "peaking_gw,wind_gw,objective_cost,hours_unmet,unserved_energy_gwh,max_shortfall_gw,"
        "extra_system_cost,status";
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected)
        throw std::invalid_argument(results_csv_path + ": unexpected header '" + line + "'");
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = results_csv_path + ":" + std::to_string(line_no);
        auto f = split_csv_row(line);
        if (f.size() != 15)
            throw std::invalid_argument(where + ": expected 15 fields, got " +
                                        std::to_string(f.size()));
        ReplicateResult row;
        row.sampler = f[0];
        row.sample_size = field_int(f[1], where);
        row.replicate = static_cast<int>(field_int(f[2], where));
        row.seed = static_cast<std::uint64_t>(
            std::strtoull(f[3].c_str(), nullptr, 10));
        row.effective_compute = field_int(f[4], where);
        row.status = f[14];
        if (row.ok()) {
            row.design.baseload_gw = field_double(f[5], where);
            row.design.mid_merit_gw = field_double(f[6], where);
            row.design.peaking_gw = field_double(f[7], where);
            row.design.wind_gw = field_double(f[8], where);
            row.objective_cost = field_double(f[9], where);
            row.hours_unmet = field_int(f[10], where);
            row.unserved_energy_gwh = field_double(f[11], where);
            row.max_shortfall_gw = field_double(f[12], where);
            row.extra_system_cost = field_double(f[13], where);
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

void write_results_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "sampler,sample_size,replicate,seed,effective_compute,baseload_gw,mid_merit_gw,"
           "peaking_gw,wind_gw,objective_cost,hours_unmet,unserved_energy_gwh,max_shortfall_gw,"
           "extra_system_cost,status\n";
    for (const auto& r : result.rows) {
        out << r.sampler << ',' << r.sample_size << ',' << r.replicate << ',' << r.seed << ','
            << r.effective_compute << ',';
        if (r.ok()) {
            out << format_double(r.design.baseload_gw) << ','
                << format_double(r.design.mid_merit_gw) << ','
                << format_double(r.design.peaking_gw) << ',' << format_double(r.design.wind_gw)
                << ',' << format_double(r.objective_cost) << ',' << r.hours_unmet << ','
                << format_double(r.unserved_energy_gwh) << ','
                << format_double(r.max_shortfall_gw) << ','
                << format_double(r.extra_system_cost) << ',';
        } else {
            out << ",,,,,,,,,";
        }
        // Commas inside error messages would break the row apart.
        std::string status = r.status;
        for (char& c : status)
            if (c == ',' || c == '\n') c = ';';
        out << status << '\n';
    }
}

void write_timings_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "sampler,sample_size,replicate,wall_ms\n";
    for (const auto& r : result.rows)
        out << r.sampler << ',' << r.sample_size << ',' << r.replicate << ','
            << format_double(r.wall_ms) << '\n';
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "sampler,sample_size,metric,count,mean,min,p2_5,p25,p50,p75,p97_5,max,bias\n";
    for (const auto& r : rows) {
        out << r.sampler << ',' << r.sample_size << ',' << r.metric << ',' << r.count << ','
            << format_double(r.stats.mean) << ',' << format_double(r.stats.min) << ','
            << format_double(r.stats.p2_5) << ',' << format_double(r.stats.p25) << ','
            << format_double(r.stats.p50) << ',' << format_double(r.stats.p75) << ','
            << format_double(r.stats.p97_5) << ',' << format_double(r.stats.max) << ','
            << format_double(r.bias) << '\n';
    }
    return out.str();
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << summary_csv(rows);
}

void write_meta_json(const ExperimentPlan& plan, const ExperimentResult& result,
                     const std::string& path) {
    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["dataset"] = plan.dataset_path;
    meta["tech_costs"] = plan.tech_params_path;
    meta["base_seed"] = plan.base_seed;
    meta["compute_equivalent"] = plan.compute_equivalent;
    meta["n_high"] = plan.n_high;
    meta["n_timesteps"] = result.n_full;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& e : plan.entries) {
        runs.push_back({{"sampler", to_string(e.kind)},
                        {"sample_size", e.sample_size},
                        {"replicates", e.replicates}});
    }
    meta["runs"] = runs;
    meta["optimal"] = {{"baseload_gw", result.optimal.design.baseload_gw},
                       {"mid_merit_gw", result.optimal.design.mid_merit_gw},
                       {"peaking_gw", result.optimal.design.peaking_gw},
                       {"wind_gw", result.optimal.design.wind_gw},
                       {"objective_cost", result.optimal.objective_cost}};
    std::ofstream out = open_out(path);
    out << meta.dump(2) << '\n';
}

}  // namespace psplan
