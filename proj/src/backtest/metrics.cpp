#include "alphafuse/backtest/metrics.hpp"

#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_std(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

std::optional<double> r_squared(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) throw StructuralError("r_squared: lengths differ");
    if (y.size() < 2) return std::nullopt;
    const double m = mean(y);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
        ss_tot += (y[i] - m) * (y[i] - m);
    }
    if (!(ss_tot > 0.0)) return std::nullopt;
    return 1.0 - ss_res / ss_tot;
}

std::optional<double> sharpe(std::span<const double> returns, double rf, double annualization) {
    if (returns.size() < 2) return std::nullopt;
    const double sd = sample_std(returns);
    if (!(sd > 0.0)) return std::nullopt;
    return (mean(returns) - rf) / sd * annualization;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw StructuralError("pearson: lengths differ");
    if (a.size() < 2) return std::nullopt;
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace alphafuse::backtest
