#include "alphafuse/backtest/longshort.hpp"

#include <cmath>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

std::vector<double> longshort_weights(std::span<const double> yhat) {
    std::vector<double> w(yhat.size(), 0.0);
    double sum = 0.0;
    std::size_t n = 0;
    for (double v : yhat) {
        if (std::isnan(v)) continue;
        sum += v;
        ++n;
    }
    if (n < 2) return w;
    const double mu = sum / static_cast<double>(n);
    double gross = 0.0;
    for (std::size_t i = 0; i < yhat.size(); ++i) {
        if (std::isnan(yhat[i])) continue;
        w[i] = yhat[i] - mu;
        gross += std::abs(w[i]);
    }
    if (!(gross > 0.0)) {
        std::fill(w.begin(), w.end(), 0.0);
        return w;
    }
    for (double& x : w) x /= gross;
    return w;
}

TradeLedger simulate_longshort(const DailyGrid& forecasts, const DailyGrid& returns, std::size_t horizon) {
    if (horizon == 0) throw ConfigError("simulate_longshort: horizon must be positive");
    if (forecasts.dates != returns.dates || forecasts.symbols != returns.symbols) {
        throw StructuralError("simulate_longshort: forecast and return grids differ");
    }
    const std::size_t D = forecasts.dates.size();
    const std::size_t N = forecasts.symbols.size();
    TradeLedger L;
    L.dates = forecasts.dates;
    std::vector<std::vector<double>> tranches(horizon, std::vector<double>(N, 0.0));
    std::vector<double> book(N, 0.0);
    double cum = 0.0;
    for (std::size_t d = 0; d < D; ++d) {
        double pnl = 0.0;
        for (std::size_t s = 0; s < N; ++s) {
            if (returns.has(d, s)) pnl += book[s] * returns.at(d, s);
        }
        std::span<const double> row(forecasts.values.data() + d * N, N);
        std::vector<double> w = longshort_weights(row);
        bool flat = true;
        for (double x : w) flat = flat && x == 0.0;
        if (flat) ++L.flat_days;
        auto& tranche = tranches[d % horizon];
        for (std::size_t s = 0; s < N; ++s) tranche[s] = w[s] / static_cast<double>(horizon);

        std::vector<double> next(N, 0.0);
        for (const auto& t : tranches) {
            for (std::size_t s = 0; s < N; ++s) next[s] += t[s];
        }
        double turnover = 0.0;
        for (std::size_t s = 0; s < N; ++s) turnover += std::abs(next[s] - book[s]);
        book = std::move(next);
        cum += pnl;
        L.positions.push_back(book);
        L.hedge.push_back(0.0);
        L.pnl.push_back(pnl);
        L.cum_pnl.push_back(cum);
        L.turnover.push_back(turnover);
        L.costs.push_back(0.0);
    }
    return L;
}

}  // namespace alphafuse::backtest
