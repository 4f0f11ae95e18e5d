#pragma once

#include <span>
#include <vector>

#include "alphafuse/backtest/ledger.hpp"
#include "alphafuse/common/panel.hpp"

namespace alphafuse::backtest {

// Demeaned forecasts scaled to gross 1 (sum |w| = 1, sum w = 0); all zeros when
// fewer than two forecasts exist or they are all equal. NaN entries get weight 0.
std::vector<double> longshort_weights(std::span<const double> yhat);

// `horizon` overlapping tranches, each holding 1/horizon of capital and starting
// flat; tranche (day mod horizon) is rebuilt each day from that day's forecasts.
// Day t P&L = sum_i book_{t-1,i} * r_{t,i}. `returns` must share the forecast grid.
TradeLedger simulate_longshort(const DailyGrid& forecasts, const DailyGrid& returns, std::size_t horizon = 5);

}  // namespace alphafuse::backtest
