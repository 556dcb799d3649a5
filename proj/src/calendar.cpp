#include "psplan/calendar.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace psplan {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int weekday_from_days(std::int64_t days) {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    const std::int64_t w = (days + 3) % 7;
    return static_cast<int>(w < 0 ? w + 7 : w);
}

SeasonPosition season_position(const CivilDate& date) {
    const int m = date.month;
    const int d = date.day;
    // February of the DJF block belongs to the same winter as the preceding
    // December, so DJF length follows the February year.
    switch (m) {
        case 12: {
            const int feb = is_leap_year(date.year + 1) ? 29 : 28;
            return {Season::DJF, d - 1, 31 + 31 + feb};
        }
        case 1: {
            const int feb = is_leap_year(date.year) ? 29 : 28;
            return {Season::DJF, 31 + d - 1, 31 + 31 + feb};
        }
        case 2: {
            const int feb = is_leap_year(date.year) ? 29 : 28;
            return {Season::DJF, 31 + 31 + d - 1, 31 + 31 + feb};
        }
        case 3: return {Season::MAM, d - 1, 92};
        case 4: return {Season::MAM, 31 + d - 1, 92};
        case 5: return {Season::MAM, 31 + 30 + d - 1, 92};
        case 6: return {Season::JJA, d - 1, 92};
        case 7: return {Season::JJA, 30 + d - 1, 92};
        case 8: return {Season::JJA, 30 + 31 + d - 1, 92};
        case 9: return {Season::SON, d - 1, 91};
        case 10: return {Season::SON, 30 + d - 1, 91};
        default: return {Season::SON, 30 + 31 + d - 1, 91};  // November
    }
}

namespace {

[[noreturn]] void bad_time(const std::string& text, const std::string& context) {
    std::string msg = "invalid ISO 8601 UTC timestamp '" + text + "'";
    if (!context.empty()) msg += " (" + context + ")";
    throw std::invalid_argument(msg);
}

bool parse_fixed_uint(const std::string& s, std::size_t pos, std::size_t len, int& out) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (i >= s.size() || s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + (s[i] - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::int64_t parse_iso8601_utc(const std::string& text, const std::string& context) {
    // Strict form: YYYY-MM-DDTHH:MM:SSZ
    int y, mo, d, h, mi, s;
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
        text[13] != ':' || text[16] != ':' || text[19] != 'Z' ||
        !parse_fixed_uint(text, 0, 4, y) || !parse_fixed_uint(text, 5, 2, mo) ||
        !parse_fixed_uint(text, 8, 2, d) || !parse_fixed_uint(text, 11, 2, h) ||
        !parse_fixed_uint(text, 14, 2, mi) || !parse_fixed_uint(text, 17, 2, s)) {
        bad_time(text, context);
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 59) bad_time(text, context);
    const CivilDate back = civil_from_days(days_from_civil(y, mo, d));
    if (back.year != y || back.month != mo || back.day != d) bad_time(text, context);
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const CivilDate dt = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", dt.year, dt.month, dt.day,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::int64_t parse_iso_date(const std::string& text, const std::string& context) {
    int y, mo, d;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !parse_fixed_uint(text, 0, 4, y) || !parse_fixed_uint(text, 5, 2, mo) ||
        !parse_fixed_uint(text, 8, 2, d)) {
        std::string msg = "invalid ISO date '" + text + "'";
        if (!context.empty()) msg += " (" + context + ")";
        throw std::invalid_argument(msg);
    }
    const CivilDate back = civil_from_days(days_from_civil(y, mo, d));
    if (back.year != y || back.month != mo || back.day != d) {
        std::string msg = "invalid ISO date '" + text + "'";
        if (!context.empty()) msg += " (" + context + ")";
        throw std::invalid_argument(msg);
    }
    return days_from_civil(y, mo, d);
}

HolidayCalendar HolidayCalendar::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open holiday file: " + path);
    HolidayCalendar cal;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        cal.add(parse_iso_date(token, path + ":" + std::to_string(lineno)));
    }
    return cal;
}

}  // namespace psplan
