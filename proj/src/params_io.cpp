#include "psplan/params_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psplan/kv_config.hpp"
#include "psplan/timeseries_io.hpp"

namespace psplan {

namespace {

void read_tech(const KvFile& kv, const std::string& name, TechCost& cost) {
    cost.install_cost = kv.get_double_or(name + ".install_cost", cost.install_cost);
    cost.gen_cost = kv.get_double_or(name + ".gen_cost", cost.gen_cost);
}

std::array<double, 24> read_profile(const KvFile& kv, const std::string& key,
                                    const std::array<double, 24>& fallback) {
    if (!kv.has(key)) return fallback;
    const std::vector<double> values =
        KvFile::parse_double_list(kv.get(key), kv.context() + ": key '" + key + "'");
    if (values.size() != 24)
        throw std::invalid_argument(kv.context() + ": key '" + key + "' needs 24 values, got " +
                                    std::to_string(values.size()));
    std::array<double, 24> out{};
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

}  // namespace

TechnologyParams load_tech_params(const std::string& path) {
    const KvFile kv = KvFile::parse_file(path);
    TechnologyParams params;
    read_tech(kv, "baseload", params.baseload);
    read_tech(kv, "mid_merit", params.mid_merit);
    read_tech(kv, "peaking", params.peaking);
    read_tech(kv, "wind", params.wind);
    params.validate();
    return params;
}

void save_tech_params(const TechnologyParams& params, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    const auto write = [&](const char* name, const TechCost& c) {
        out << name << ".install_cost = " << format_double(c.install_cost) << '\n'
            << name << ".gen_cost = " << format_double(c.gen_cost) << '\n';
    };
    out << "# installation costs in million GBP per GW-year, generation costs in million GBP per GWh\n";
    write("baseload", params.baseload);
    write("mid_merit", params.mid_merit);
    write("peaking", params.peaking);
    write("wind", params.wind);
    if (!out) throw std::invalid_argument("failed while writing '" + path + "'");
}

SynthConfig load_synth_config(const std::string& path) {
    const KvFile kv = KvFile::parse_file(path);
    SynthConfig cfg;
    cfg.start_year = static_cast<int>(kv.get_int_or("start_year", cfg.start_year));
    cfg.n_years = static_cast<int>(kv.get_int_or("n_years", cfg.n_years));
    cfg.seed = static_cast<std::uint64_t>(kv.get_int_or("seed", static_cast<std::int64_t>(cfg.seed)));
    cfg.apply_detrend = kv.get_bool_or("detrend", cfg.apply_detrend);

    DemandRegressionParams& d = cfg.demand;
    d.alpha1 = kv.get_double_or("demand.alpha1", d.alpha1);
    d.alpha2 = kv.get_double_or("demand.alpha2", d.alpha2);
    d.alpha3 = kv.get_double_or("demand.alpha3", d.alpha3);
    d.alpha4 = kv.get_double_or("demand.alpha4", d.alpha4);
    d.alpha5 = kv.get_double_or("demand.alpha5", d.alpha5);
    d.alpha6 = kv.get_double_or("demand.alpha6", d.alpha6);
    if (kv.has("demand.weekday")) {
        const std::vector<double> w = KvFile::parse_double_list(
            kv.get("demand.weekday"), kv.context() + ": key 'demand.weekday'");
        if (w.size() != 7)
            throw std::invalid_argument(kv.context() +
                                        ": key 'demand.weekday' needs 7 values (Monday..Sunday)");
        std::copy(w.begin(), w.end(), d.weekday.begin());
    }
    d.alpha_holiday = kv.get_double_or("demand.holiday", d.alpha_holiday);
    d.error_std = kv.get_double_or("demand.error_std", d.error_std);
    d.error_truncation = kv.get_double_or("demand.error_truncation", d.error_truncation);
    if (kv.has("demand.detrend_reference"))
        d.detrend_reference_day = parse_iso_date(kv.get("demand.detrend_reference"),
                                                 kv.context() + ": demand.detrend_reference");

    DiurnalProfiles& p = cfg.profiles;
    p.shares[0] = read_profile(kv, "profile.djf", p.shares[0]);
    p.shares[1] = read_profile(kv, "profile.mam", p.shares[1]);
    p.shares[2] = read_profile(kv, "profile.jja", p.shares[2]);
    p.shares[3] = read_profile(kv, "profile.son", p.shares[3]);
    p.validate();

    TemperatureModelParams& t = cfg.temperature;
    t.mean_c = kv.get_double_or("temperature.mean", t.mean_c);
    t.amplitude_c = kv.get_double_or("temperature.amplitude", t.amplitude_c);
    t.coldest_day = kv.get_double_or("temperature.coldest_day", t.coldest_day);
    t.noise_std = kv.get_double_or("temperature.noise_std", t.noise_std);
    t.persistence = kv.get_double_or("temperature.persistence", t.persistence);

    WindModelParams& w = cfg.wind;
    w.mean_cf = kv.get_double_or("wind.mean_cf", w.mean_cf);
    w.persistence = kv.get_double_or("wind.persistence", w.persistence);
    w.spread = kv.get_double_or("wind.spread", w.spread);

    if (kv.has("holidays_file")) cfg.holidays = HolidayCalendar::from_file(kv.get("holidays_file"));

    cfg.demand.validate();
    cfg.temperature.validate();
    cfg.wind.validate();
    return cfg;
}

std::string design_to_json(const SystemDesign& design) {
    nlohmann::json j;
    j["baseload_gw"] = design.baseload_gw;
    j["mid_merit_gw"] = design.mid_merit_gw;
    j["peaking_gw"] = design.peaking_gw;
    j["wind_gw"] = design.wind_gw;
    return j.dump(2) + "\n";
}

SystemDesign design_from_json(const std::string& text) {
    SystemDesign design;
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        design.baseload_gw = j.at("baseload_gw").get<double>();
        design.mid_merit_gw = j.at("mid_merit_gw").get<double>();
        design.peaking_gw = j.at("peaking_gw").get<double>();
        design.wind_gw = j.at("wind_gw").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("design JSON: ") + e.what());
    }
    design.validate();
    return design;
}

SystemDesign load_design_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return design_from_json(buffer.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void save_design_json(const SystemDesign& design, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << design_to_json(design);
    if (!out) throw std::invalid_argument("failed while writing '" + path + "'");
}

}  // namespace psplan
