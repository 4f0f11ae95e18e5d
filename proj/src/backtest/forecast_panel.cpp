#include "alphafuse/backtest/forecast_panel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

void write_forecasts_csv(const std::string& path, const std::vector<ForecastRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date,symbol,yhat,y,set\n";
    for (const auto& r : rows) {
        out << r.date.to_string() << ',' << r.symbol << ',' << csv::format_double(r.yhat) << ',';
        if (!std::isnan(r.y)) out << csv::format_double(r.y);
        out << ',' << r.set << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<ForecastRow> read_forecasts_csv(const std::string& path) {
    const auto lines = csv::read_lines(path);
    if (lines.empty() || lines[0] != "date,symbol,yhat,y,set") {
        throw ParseError("forecast header must be 'date,symbol,yhat,y,set'", 1);
    }
    std::vector<ForecastRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = csv::split_line(lines[i]);
        if (f.size() != 5) throw ParseError("expected 5 fields", i + 1);
        ForecastRow r;
        try {
            r.date = Date::parse(f[0]);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), i + 1);
        }
        r.symbol = f[1];
        r.yhat = csv::parse_double(f[2], i + 1);
        r.y = f[3].empty() ? std::nan("") : csv::parse_double(f[3], i + 1);
        r.set = f[4];
        rows.push_back(std::move(r));
    }
    return rows;
}

ForecastPanel to_panel(const std::vector<ForecastRow>& rows, const std::vector<Date>& calendar,
                       const std::vector<std::string>& symbols, const std::string& set) {
    ForecastPanel panel(calendar, symbols);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t s = 0; s < symbols.size(); ++s) index.emplace(symbols[s], s);
    for (const auto& r : rows) {
        if (!set.empty() && r.set != set) continue;
        auto d = std::lower_bound(calendar.begin(), calendar.end(), r.date);
        if (d == calendar.end() || *d != r.date) throw ValidationError("forecast date " + r.date.to_string() + " not in calendar");
        auto s = index.find(r.symbol);
        if (s == index.end()) throw ValidationError("forecast symbol '" + r.symbol + "' unknown");
        const std::size_t di = static_cast<std::size_t>(d - calendar.begin());
        if (panel.yhat.has(di, s->second)) {
            throw ValidationError("duplicate forecast for " + r.symbol + " on " + r.date.to_string());
        }
        panel.yhat.at(di, s->second) = r.yhat;
        panel.y.at(di, s->second) = r.y;
    }
    return panel;
}

std::vector<double> paper_pnl(const ForecastPanel& panel) {
    if (panel.y.dates != panel.yhat.dates || panel.y.symbols != panel.yhat.symbols) {
        throw StructuralError("paper_pnl: forecast and label grids are misaligned");
    }
    std::vector<double> out(panel.num_dates(), 0.0);
    for (std::size_t d = 0; d < panel.num_dates(); ++d) {
        for (std::size_t s = 0; s < panel.num_symbols(); ++s) {
            if (panel.yhat.has(d, s) && panel.y.has(d, s)) out[d] += panel.yhat.at(d, s) - panel.y.at(d, s);
        }
    }
    return out;
}

}  // namespace alphafuse::backtest
