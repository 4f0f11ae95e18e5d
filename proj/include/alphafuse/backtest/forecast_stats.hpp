#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alphafuse/backtest/forecast_panel.hpp"

namespace alphafuse::backtest {

struct ForecastStats {
    std::vector<std::optional<double>> daily_std;          // cross-sectional sd of yhat
    std::vector<std::optional<double>> daily_correlation;  // Pearson(yhat, y)
    std::size_t degenerate_days = 0;
};

ForecastStats forecast_stats(const ForecastPanel& panel);

// `date,forecast_std,correlation`, empty fields for degenerate days.
void write_forecast_stats_csv(const std::string& path, const ForecastPanel& panel, const ForecastStats& stats);

// `metric,value`
void write_metrics_csv(const std::string& path, const std::vector<std::pair<std::string, std::optional<double>>>& rows);

}  // namespace alphafuse::backtest
