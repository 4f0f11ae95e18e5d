#include "alphafuse/common/date.hpp"

#include <chrono>
#include <cstdio>

#include "alphafuse/common/errors.hpp"

namespace alphafuse {

namespace {

bool parse_uint(std::string_view s, unsigned& out) {
    if (s.empty()) return false;
    unsigned v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    out = v;
    return true;
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        throw ValidationError("invalid calendar date " + std::to_string(year) + "-" +
                              std::to_string(month) + "-" + std::to_string(day));
    }
    return Date(static_cast<std::int32_t>(std::chrono::sys_days{ymd}.time_since_epoch().count()));
}

Date Date::parse(std::string_view text) {
    unsigned y = 0, m = 0, d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_uint(text.substr(0, 4), y) ||
        !parse_uint(text.substr(5, 2), m) || !parse_uint(text.substr(8, 2), d)) {
        throw ValidationError("malformed date '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    return from_ymd(static_cast<int>(y), m, d);
}

std::string Date::to_string() const {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days_}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int Date::weekday() const noexcept {
    const std::chrono::weekday wd{std::chrono::sys_days{std::chrono::days{days_}}};
    return static_cast<int>(wd.iso_encoding()) - 1;
}

}  // namespace alphafuse
