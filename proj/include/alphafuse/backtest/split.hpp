#pragma once

#include <optional>
#include <vector>

#include "alphafuse/common/date.hpp"

namespace alphafuse::backtest {

inline constexpr std::size_t kDefaultGapDays = 10;

struct SplitSpec {
    Date train_end;
    std::size_t gap_days = kDefaultGapDays;
    Date test_start;
    Date test_end;
    std::size_t train_end_index = 0;
    std::size_t test_start_index = 0;
    std::size_t test_end_index = 0;
};

// Skips gap_days trading days after train_end; the test window runs from the next
// day to test_end (default: last calendar day). Throws ValidationError
// when train_end is not a trading day or the calendar is too short.
SplitSpec make_split(const std::vector<Date>& calendar, Date train_end, std::size_t gap_days = kDefaultGapDays,
                     std::optional<Date> test_end = std::nullopt);

}  // namespace alphafuse::backtest
