#include "alphafuse/backtest/split.hpp"

#include <algorithm>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

SplitSpec make_split(const std::vector<Date>& calendar, Date train_end, std::size_t gap_days,
                     std::optional<Date> test_end) {
    auto it = std::lower_bound(calendar.begin(), calendar.end(), train_end);
    if (it == calendar.end() || *it != train_end) {
        throw ValidationError("split: train_end " + train_end.to_string() + " is not a trading day");
    }
    SplitSpec s;
    s.train_end = train_end;
    s.gap_days = gap_days;
    s.train_end_index = static_cast<std::size_t>(it - calendar.begin());
    s.test_start_index = s.train_end_index + gap_days + 1;
    if (s.test_start_index >= calendar.size()) {
        throw ValidationError("split: calendar ends before the test window after a " + std::to_string(gap_days) +
                              "-day gap");
    }
    s.test_end_index = calendar.size() - 1;
    if (test_end) {
        auto e = std::upper_bound(calendar.begin(), calendar.end(), *test_end);
        if (e == calendar.begin()) throw ValidationError("split: test_end precedes the calendar");
        s.test_end_index = static_cast<std::size_t>(e - calendar.begin()) - 1;
        if (s.test_end_index < s.test_start_index) throw ValidationError("split: test_end precedes test_start");
    }
    s.test_start = calendar[s.test_start_index];
    s.test_end = calendar[s.test_end_index];
    return s;
}

}  // namespace alphafuse::backtest
