#include "psplan/kv_config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace psplan {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& context, int line, const std::string& msg) {
    throw std::invalid_argument(context + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

KvFile KvFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path);
}

KvFile KvFile::parse_string(const std::string& text, const std::string& context) {
    KvFile kv;
    kv.context_ = context;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(context, line_no, "expected 'key = value'");
        Entry e;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = line_no;
        if (e.key.empty()) fail(context, line_no, "empty key");
        kv.entries_.push_back(std::move(e));
    }
    return kv;
}

bool KvFile::has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const Entry& e) { return e.key == key; });
}

std::string KvFile::get(const std::string& key) const {
    const Entry* found = nullptr;
    for (const Entry& e : entries_) {
        if (e.key == key) found = &e;
    }
    if (!found) throw std::invalid_argument(context_ + ": missing key '" + key + "'");
    return found->value;
}

std::string KvFile::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

double KvFile::get_double(const std::string& key) const {
    const std::string v = get(key);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw std::invalid_argument(context_ + ": key '" + key + "': '" + v + "' is not a number");
    return x;
}

double KvFile::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::int64_t KvFile::get_int(const std::string& key) const {
    const std::string v = get(key);
    char* end = nullptr;
    errno = 0;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw std::invalid_argument(context_ + ": key '" + key + "': '" + v +
                                    "' is not an integer");
    return x;
}

std::int64_t KvFile::get_int_or(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool KvFile::get_bool_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument(context_ + ": key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<std::string> KvFile::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const Entry& e : entries_) {
        if (e.key == key) out.push_back(e.value);
    }
    return out;
}

std::vector<KvFile::Entry> KvFile::entries_for(const std::string& key) const {
    std::vector<Entry> out;
    for (const Entry& e : entries_) {
        if (e.key == key) out.push_back(e);
    }
    return out;
}

std::int64_t KvFile::parse_int(const std::string& value, const std::string& context) {
    char* end = nullptr;
    errno = 0;
    const long long x = std::strtoll(value.c_str(), &end, 10);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw std::invalid_argument(context + ": '" + value + "' is not an integer");
    return x;
}

std::vector<double> KvFile::parse_double_list(const std::string& value,
                                              const std::string& context) {
    std::vector<double> out;
    std::istringstream in(value);
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        errno = 0;
        const double x = std::strtod(tok.c_str(), &end);
        if (errno != 0 || end == tok.c_str() || *end != '\0')
            throw std::invalid_argument(context + ": '" + tok + "' is not a number");
        out.push_back(x);
    }
    return out;
}

}  // namespace psplan
