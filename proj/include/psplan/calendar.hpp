#pragma once

#include <cstdint>
#include <set>
#include <string>

namespace psplan {

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
};

bool is_leap_year(int year);

// Days since 1970-01-01 (proleptic Gregorian), negative allowed.
std::int64_t days_from_civil(int year, int month, int day);
CivilDate civil_from_days(std::int64_t days);

// 0 = Monday .. 6 = Sunday.
int weekday_from_days(std::int64_t days);

// Three-month seasons used by the diurnal profiles.
enum class Season : int { DJF = 0, MAM = 1, JJA = 2, SON = 3 };

struct SeasonPosition {
    Season season;
    int day_index;   // 0-based position within the season
    int season_len;  // 90/91 for DJF depending on leap February, else 91/92
};

SeasonPosition season_position(const CivilDate& date);

// "2011-01-01T00:00:00Z" <-> epoch seconds. parse throws std::invalid_argument
// with `context` in the message on malformed input.
std::int64_t parse_iso8601_utc(const std::string& text, const std::string& context = "");
std::string format_iso8601_utc(std::int64_t epoch_seconds);

// Parse "YYYY-MM-DD" into days since epoch.
std::int64_t parse_iso_date(const std::string& text, const std::string& context = "");

// Bank holidays as a set of day numbers, read from a date-list file
// (one YYYY-MM-DD per line, '#' comments, blank lines ignored).
class HolidayCalendar {
public:
    HolidayCalendar() = default;
    static HolidayCalendar from_file(const std::string& path);

    void add(std::int64_t day) { days_.insert(day); }
    bool is_holiday(std::int64_t day) const { return days_.count(day) != 0; }
    std::size_t size() const { return days_.size(); }

private:
    std::set<std::int64_t> days_;
};

}  // namespace psplan
