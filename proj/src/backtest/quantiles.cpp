#include "alphafuse/backtest/quantiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "alphafuse/backtest/metrics.hpp"
#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

namespace {

double sign(double x) {
    return static_cast<double>((x > 0.0) - (x < 0.0));
}

}  // namespace

double quantile_fraction(int qr) {
    switch (qr) {
        case 1: return 1.0;
        case 2: return 0.75;
        case 3: return 0.5;
        case 4: return 0.25;
        default: throw ConfigError("quantile rank must be 1..4, got " + std::to_string(qr));
    }
}

std::vector<std::vector<std::size_t>> quantile_buckets(const ForecastPanel& panel, int qr, Side side) {
    const double fraction = quantile_fraction(qr);
    std::vector<std::vector<std::size_t>> out(panel.num_dates());
    std::vector<std::size_t> cand;
    for (std::size_t d = 0; d < panel.num_dates(); ++d) {
        cand.clear();
        for (std::size_t s = 0; s < panel.num_symbols(); ++s) {
            if (panel.yhat.has(d, s) && panel.y.has(d, s)) cand.push_back(s);
        }
        if (cand.empty()) continue;
        std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(panel.yhat.at(d, a)) > std::abs(panel.yhat.at(d, b));
        });
        const auto take = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(cand.size()) - 1e-9));
        cand.resize(std::min(cand.size(), take));
        for (std::size_t s : cand) {
            const double v = panel.yhat.at(d, s);
            if (side == Side::Long && !(v > 0.0)) continue;
            if (side == Side::Short && !(v < 0.0)) continue;
            out[d].push_back(s);
        }
        std::sort(out[d].begin(), out[d].end());
    }
    return out;
}

std::vector<QuantileResult> quantile_analysis(const ForecastPanel& panel, const std::vector<int>& qrs, Side side) {
    std::vector<QuantileResult> results;
    for (int qr : qrs) {
        QuantileResult r;
        r.qr = qr;
        r.fraction = quantile_fraction(qr);
        const auto buckets = quantile_buckets(panel, qr, side);
        double total = 0.0;
        double cum = 0.0;
        std::vector<double> per_dollar;
        for (std::size_t d = 0; d < panel.num_dates(); ++d) {
            double day = 0.0;
            for (std::size_t s : buckets[d]) day += sign(panel.yhat.at(d, s)) * panel.y.at(d, s);
            if (buckets[d].empty()) {
                ++r.skipped_days;
            } else {
                per_dollar.push_back(day / static_cast<double>(buckets[d].size()));
            }
            r.n_trades += buckets[d].size();
            total += day;
            cum += day;
            r.daily_pnl.push_back(day);
            r.cum_pnl.push_back(cum);
        }
        r.ppd_bps = r.n_trades ? 1e4 * total / static_cast<double>(r.n_trades) : 0.0;
        r.sharpe = sharpe(per_dollar);
        results.push_back(std::move(r));
    }
    return results;
}

void write_quantiles_csv(const std::string& path, const std::vector<QuantileResult>& results) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "qr,ppd_bps,sharpe,n_trades\n";
    for (const auto& r : results) {
        out << r.qr << ',' << csv::format_double(r.ppd_bps) << ',';
        if (r.sharpe) out << csv::format_double(*r.sharpe);
        out << ',' << r.n_trades << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace alphafuse::backtest
