#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "alphafuse/market/bars.hpp"

namespace alphafuse::market {

struct UniverseFilter {
    double min_median_dollar_volume = 1e6;
    double min_price = 1.0;
    std::size_t min_history = 250;
};

// Symbols (in panel order) whose bars inside [window_start, window_end] have
// median close*volume >= threshold, median close >= min_price, and at least
// min_history present days. Unset bounds mean the whole calendar.
std::vector<std::string> filter_universe(const BarPanel& panel, const UniverseFilter& filter,
                                         std::optional<Date> window_start = std::nullopt,
                                         std::optional<Date> window_end = std::nullopt);

}  // namespace alphafuse::market
