#pragma once

#include <string>
#include <vector>

#include "alphafuse/common/date.hpp"

namespace alphafuse::backtest {

struct TradeLedger {
    std::vector<Date> dates;
    std::vector<std::vector<double>> positions;  // end-of-day book per stock
    std::vector<double> hedge;                   // market hedge position, zeros when unused
    std::vector<double> pnl;
    std::vector<double> cum_pnl;
    std::vector<double> turnover;
    std::vector<double> costs;
    std::size_t flat_days = 0;  // rebalances with no usable cross-section

    double total_pnl() const { return cum_pnl.empty() ? 0.0 : cum_pnl.back(); }
    double total_turnover() const;
};

// `date,pnl,cum_pnl,turnover`
void write_pnl_csv(const std::string& path, const TradeLedger& ledger);

}  // namespace alphafuse::backtest
