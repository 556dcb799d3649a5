#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psplan {

// Flat key-value file: one `key = value` per line, '#' starts a comment,
// blank lines ignored. Keys may repeat; order is preserved. Errors carry the
// file name and line number.
class KvFile {
public:
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };

    static KvFile parse_file(const std::string& path);
    static KvFile parse_string(const std::string& text, const std::string& context);

    const std::vector<Entry>& entries() const { return entries_; }
    bool has(const std::string& key) const;

    // Single-valued accessors use the last occurrence; get() throws when the
    // key is missing, get_or() substitutes a default.
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

    // All values for a repeated key, in file order.
    std::vector<std::string> get_all(const std::string& key) const;
    // Same, but keeping line numbers for error reporting.
    std::vector<Entry> entries_for(const std::string& key) const;

    // Whitespace-separated doubles from one value.
    static std::vector<double> parse_double_list(const std::string& value,
                                                 const std::string& context);
    static std::int64_t parse_int(const std::string& value, const std::string& context);

    const std::string& context() const { return context_; }

private:
    std::vector<Entry> entries_;
    std::string context_;
};

}  // namespace psplan
