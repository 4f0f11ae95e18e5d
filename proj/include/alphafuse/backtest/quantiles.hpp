#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alphafuse/backtest/forecast_panel.hpp"

namespace alphafuse::backtest {

enum class Side { Both, Long, Short };

// QR 1..4 -> top 100 / 75 / 50 / 25 % by |yhat|.
double quantile_fraction(int qr);

struct QuantileResult {
    int qr = 1;
    double fraction = 1.0;
    double ppd_bps = 0.0;
    std::optional<double> sharpe;
    std::size_t n_trades = 0;
    std::size_t skipped_days = 0;
    std::vector<double> daily_pnl;  // per panel date, $1 per trade
    std::vector<double> cum_pnl;
};

// Bucket per day: the ceil(fraction * n) stocks with the largest |yhat| (ties by
// index) among those with both yhat and y, then restricted to `side`. Each trade is
// $1 in the direction of sign(yhat); PPD = 1e4 * mean(sign(yhat) * y).
std::vector<QuantileResult> quantile_analysis(const ForecastPanel& panel, const std::vector<int>& qrs = {1, 2, 3, 4},
                                              Side side = Side::Both);

// Per-day bucket membership, for inspection: bucket[d] lists symbol indices.
std::vector<std::vector<std::size_t>> quantile_buckets(const ForecastPanel& panel, int qr, Side side = Side::Both);

// `qr,ppd_bps,sharpe,n_trades`
void write_quantiles_csv(const std::string& path, const std::vector<QuantileResult>& results);

}  // namespace alphafuse::backtest
