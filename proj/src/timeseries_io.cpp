#include "psplan/timeseries_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "psplan/calendar.hpp"

namespace psplan {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
    throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& text, const std::string& path, int line,
                    const std::string& what) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (errno != 0 || end == text.c_str() || *end != '\0')
        fail(path, line, what + ": '" + text + "' is not a number");
    return v;
}

std::int64_t parse_int(const std::string& text, const std::string& path, int line,
                       const std::string& what) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0')
        fail(path, line, what + ": '" + text + "' is not an integer");
    return v;
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return in;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

WeightedTimeseries load_timeseries_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument(path + ": no data rows");
    ++line_no;
    {
        const auto header = split_csv(line);
        if (header.size() != 3 || header[0] != "time" || header[1] != "demand_gw" ||
            header[2] != "wind_cf")
            fail(path, line_no, "expected header 'time,demand_gw,wind_cf'");
    }
    WeightedTimeseries ts;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3) fail(path, line_no, "expected 3 comma-separated fields");
        const std::int64_t t =
            parse_iso8601_utc(fields[0], path + ":" + std::to_string(line_no));
        const double demand = parse_double(fields[1], path, line_no, "demand_gw");
        const double wind = parse_double(fields[2], path, line_no, "wind_cf");
        if (!(std::isfinite(demand) && demand >= 0.0))
            fail(path, line_no, "demand_gw must be finite and >= 0");
        if (!(std::isfinite(wind) && wind >= 0.0 && wind <= 1.0))
            fail(path, line_no, "wind_cf must lie in [0, 1]");
        if (!ts.time_epoch_s.empty() && t != ts.time_epoch_s.back() + 3600)
            fail(path, line_no, "timestamps must advance in one-hour steps");
        ts.time_epoch_s.push_back(t);
        ts.demand_gw.push_back(demand);
        ts.wind_cf.push_back(wind);
    }
    if (ts.empty()) throw std::invalid_argument(path + ": no data rows");
    const double w = 1.0 / static_cast<double>(ts.size());
    ts.weight.assign(ts.size(), w);
    return ts;
}

void save_timeseries_csv(const WeightedTimeseries& ts, const std::string& path) {
    if (!ts.has_time())
        throw std::invalid_argument("save_timeseries_csv: dataset has no timestamps");
    if (ts.empty()) throw std::invalid_argument("save_timeseries_csv: dataset is empty");
    std::ofstream out = open_for_write(path);
    out << "time,demand_gw,wind_cf\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out << format_iso8601_utc(ts.time_epoch_s[i]) << ',' << format_double(ts.demand_gw[i])
            << ',' << format_double(ts.wind_cf[i]) << '\n';
    }
    if (!out) throw std::invalid_argument("failed while writing '" + path + "'");
}

Subsample load_subsample_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument(path + ": no data rows");
    ++line_no;
    {
        const auto header = split_csv(line);
        if (header.size() != 3 || header[0] != "index" || header[1] != "weight" ||
            header[2] != "forced")
            fail(path, line_no, "expected header 'index,weight,forced'");
    }
    Subsample sub;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3) fail(path, line_no, "expected 3 comma-separated fields");
        const std::int64_t idx = parse_int(fields[0], path, line_no, "index");
        const double weight = parse_double(fields[1], path, line_no, "weight");
        const std::int64_t forced = parse_int(fields[2], path, line_no, "forced");
        if (idx < 0) fail(path, line_no, "index must be >= 0");
        if (!sub.indices.empty() && idx <= sub.indices.back())
            fail(path, line_no, "indices must be strictly increasing");
        if (!(std::isfinite(weight) && weight > 0.0))
            fail(path, line_no, "weight must be finite and > 0");
        if (forced != 0 && forced != 1) fail(path, line_no, "forced must be 0 or 1");
        sub.indices.push_back(idx);
        sub.weights.push_back(weight);
        sub.forced.push_back(forced == 1);
    }
    if (sub.indices.empty()) throw std::invalid_argument(path + ": no data rows");
    return sub;
}

void save_subsample_csv(const Subsample& sub, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "index,weight,forced\n";
    for (std::size_t i = 0; i < sub.indices.size(); ++i) {
        out << sub.indices[i] << ',' << format_double(sub.weights[i]) << ','
            << (sub.forced[i] ? 1 : 0) << '\n';
    }
    if (!out) throw std::invalid_argument("failed while writing '" + path + "'");
}

}  // namespace psplan
