#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "alphafuse/common/panel.hpp"
#include "alphafuse/market/bars.hpp"

namespace alphafuse::market {

inline constexpr std::size_t kDefaultHorizon = 5;

// log(p_t / p_prev); throws DomainError unless both prices are > 0.
double log_return(double p_t, double p_prev);

// Return of entering at the open of t+1 and exiting at the open of t+1+horizon,
// i.e. only prices strictly after t. Missing when the window leaves the calendar
// or touches a missing bar.
std::optional<double> forward_return(const BarPanel& panel, std::size_t symbol, std::size_t t,
                                     std::size_t horizon = kDefaultHorizon);
// Throws LookupError for an unknown symbol or a date outside the calendar.
std::optional<double> forward_return(const BarPanel& panel, std::string_view symbol, Date t,
                                     std::size_t horizon = kDefaultHorizon);

// r[d][s] = log(open_d / open_{d-1}); NaN on the first day or around missing bars.
DailyGrid daily_open_returns(const BarPanel& panel);

}  // namespace alphafuse::market
