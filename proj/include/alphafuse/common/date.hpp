#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace alphafuse {

// Calendar date stored as days since 1970-01-01.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

    // Parses `YYYY-MM-DD`; throws ValidationError on malformed or impossible dates.
    static Date parse(std::string_view text);
    static Date from_ymd(int year, unsigned month, unsigned day);

    std::string to_string() const;
    constexpr std::int32_t days() const noexcept { return days_; }
    // 0 = Monday ... 6 = Sunday
    int weekday() const noexcept;
    constexpr Date plus_days(std::int32_t n) const noexcept { return Date(days_ + n); }

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

private:
    std::int32_t days_ = 0;
};

}  // namespace alphafuse
