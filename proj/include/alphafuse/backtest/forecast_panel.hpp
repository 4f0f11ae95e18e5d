#pragma once

#include <string>
#include <vector>

#include "alphafuse/common/date.hpp"
#include "alphafuse/common/panel.hpp"

namespace alphafuse::backtest {

// Forecast yhat and realized label y per (date, symbol); NaN marks absence.
struct ForecastPanel {
    DailyGrid yhat;
    DailyGrid y;

    ForecastPanel() = default;
    ForecastPanel(std::vector<Date> dates, std::vector<std::string> symbols)
        : yhat(dates, symbols), y(std::move(dates), std::move(symbols)) {}

    const std::vector<Date>& dates() const noexcept { return yhat.dates; }
    const std::vector<std::string>& symbols() const noexcept { return yhat.symbols; }
    std::size_t num_dates() const noexcept { return yhat.dates.size(); }
    std::size_t num_symbols() const noexcept { return yhat.symbols.size(); }
};

struct ForecastRow {
    Date date;
    std::string symbol;
    double yhat = 0.0;
    double y = 0.0;  // NaN when unknown
    std::string set;
};

// CSV `date,symbol,yhat,y,set`; an unknown label is an empty field.
void write_forecasts_csv(const std::string& path, const std::vector<ForecastRow>& rows);
std::vector<ForecastRow> read_forecasts_csv(const std::string& path);

// Rows with the given set tag ("" keeps all) on the supplied calendar and symbols.
// Throws ValidationError on duplicate keys or dates / symbols outside the grid.
ForecastPanel to_panel(const std::vector<ForecastRow>& rows, const std::vector<Date>& calendar,
                       const std::vector<std::string>& symbols, const std::string& set = "");

// Printed P&L metric: per day sum over stocks of (yhat - y) where both exist.
std::vector<double> paper_pnl(const ForecastPanel& panel);

}  // namespace alphafuse::backtest
