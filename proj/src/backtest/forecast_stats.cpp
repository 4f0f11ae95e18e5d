#include "alphafuse/backtest/forecast_stats.hpp"

#include <fstream>

#include "alphafuse/backtest/metrics.hpp"
#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

ForecastStats forecast_stats(const ForecastPanel& panel) {
    ForecastStats st;
    std::vector<double> f, a, b;
    for (std::size_t d = 0; d < panel.num_dates(); ++d) {
        f.clear();
        a.clear();
        b.clear();
        for (std::size_t s = 0; s < panel.num_symbols(); ++s) {
            if (!panel.yhat.has(d, s)) continue;
            f.push_back(panel.yhat.at(d, s));
            if (panel.y.has(d, s)) {
                a.push_back(panel.yhat.at(d, s));
                b.push_back(panel.y.at(d, s));
            }
        }
        st.daily_std.push_back(f.size() >= 2 ? std::optional<double>(sample_std(f)) : std::nullopt);
        auto c = pearson(a, b);
        if (!c) ++st.degenerate_days;
        st.daily_correlation.push_back(c);
    }
    return st;
}

void write_forecast_stats_csv(const std::string& path, const ForecastPanel& panel, const ForecastStats& stats) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date,forecast_std,correlation\n";
    for (std::size_t d = 0; d < panel.num_dates(); ++d) {
        out << panel.dates()[d].to_string() << ',';
        if (stats.daily_std[d]) out << csv::format_double(*stats.daily_std[d]);
        out << ',';
        if (stats.daily_correlation[d]) out << csv::format_double(*stats.daily_correlation[d]);
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_metrics_csv(const std::string& path, const std::vector<std::pair<std::string, std::optional<double>>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "metric,value\n";
    for (const auto& [name, v] : rows) {
        out << name << ',';
        if (v) out << csv::format_double(*v);
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace alphafuse::backtest
