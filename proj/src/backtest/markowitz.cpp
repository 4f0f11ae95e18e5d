#include "alphafuse/backtest/markowitz.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::backtest {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

}  // namespace

std::vector<double> markowitz_weights(std::span<const double> yhat, std::span<const double> cov,
                                      std::span<const double> previous, const MarkowitzConfig& config) {
    const std::size_t n = yhat.size();
    if (cov.size() != n * n || previous.size() != n) throw StructuralError("markowitz_weights: dimension mismatch");
    if (!(config.risk_aversion > 0.0)) throw ConfigError("markowitz: risk_aversion must be positive");
    if (config.c_lin < 0.0 || config.c_quad < 0.0) throw ConfigError("markowitz: costs must be non-negative");
    if (n == 0) return {};
    const Eigen::Map<const Mat> S(cov.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double g = config.risk_aversion;

    if (config.c_lin == 0.0) {
        Eigen::MatrixXd A = 2.0 * g * S;
        A.diagonal().array() += 2.0 * config.c_quad;
        Eigen::VectorXd b(n);
        for (std::size_t i = 0; i < n; ++i) b[static_cast<Eigen::Index>(i)] = yhat[i] + 2.0 * config.c_quad * previous[i];
        const Eigen::VectorXd w = A.ldlt().solve(b);
        return {w.data(), w.data() + n};
    }

    std::vector<double> w(previous.begin(), previous.end());
    Eigen::VectorXd Sw = S * Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(n));
    for (std::size_t sweep = 0; sweep < config.max_sweeps; ++sweep) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            const double a = 2.0 * g * S(ii, ii) + 2.0 * config.c_quad;
            const double grad = -yhat[i] + 2.0 * g * Sw[ii] + 2.0 * config.c_quad * (w[i] - previous[i]);
            const double z = w[i] - grad / a;
            const double next = previous[i] + soft_threshold(z - previous[i], config.c_lin / a);
            const double step = next - w[i];
            if (step != 0.0) {
                Sw += step * S.col(ii);
                w[i] = next;
                max_step = std::max(max_step, std::abs(step));
            }
        }
        if (max_step <= config.tolerance) break;
    }
    return w;
}

void apply_caps(std::vector<double>& w, double name_cap, double gross_cap) {
    for (double& x : w) x = std::clamp(x, -name_cap, name_cap);
    double gross = 0.0;
    for (double x : w) gross += std::abs(x);
    if (gross > gross_cap && gross > 0.0) {
        for (double& x : w) x *= gross_cap / gross;
    }
}

TradeLedger simulate_markowitz(const DailyGrid& forecasts, const DailyGrid& returns, const MarkowitzConfig& config) {
    if (forecasts.dates != returns.dates || forecasts.symbols != returns.symbols) {
        throw StructuralError("simulate_markowitz: forecast and return grids differ");
    }
    if (!(config.halflife > 0.0)) throw ConfigError("markowitz: halflife must be positive");
    if (config.shrinkage < 0.0 || config.shrinkage > 1.0) throw ConfigError("markowitz: shrinkage must lie in [0, 1]");
    const std::size_t D = forecasts.dates.size();
    const std::size_t N = forecasts.symbols.size();
    const double decay = std::pow(0.5, 1.0 / config.halflife);

    // Joint EWMA second moments of [r_1 .. r_N, market].
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N + 1), static_cast<Eigen::Index>(N + 1));
    double weight_sum = 0.0;
    std::size_t history = 0;

    TradeLedger L;
    L.dates = forecasts.dates;
    std::vector<double> w(N, 0.0);
    double hedge = 0.0;
    double cum = 0.0;
    Eigen::VectorXd x(static_cast<Eigen::Index>(N + 1));

    for (std::size_t d = 0; d < D; ++d) {
        double market = 0.0;
        std::size_t live = 0;
        for (std::size_t s = 0; s < N; ++s) {
            if (returns.has(d, s)) {
                market += returns.at(d, s);
                ++live;
            }
        }
        market = live ? market / static_cast<double>(live) : 0.0;
        double pnl = hedge * market;
        for (std::size_t s = 0; s < N; ++s) {
            const double r = returns.has(d, s) ? returns.at(d, s) : 0.0;
            pnl += w[s] * r;
            x[static_cast<Eigen::Index>(s)] = r;
        }
        pnl *= config.capital;
        if (live > 0) {
            x[static_cast<Eigen::Index>(N)] = market;
            M = decay * M + (1.0 - decay) * (x * x.transpose());
            weight_sum = decay * weight_sum + (1.0 - decay);
            ++history;
        }

        std::vector<std::size_t> active;
        for (std::size_t s = 0; s < N; ++s) {
            if (forecasts.has(d, s)) active.push_back(s);
        }
        std::vector<double> next(N, 0.0);
        double next_hedge = 0.0;
        if (history >= config.min_history && !active.empty()) {
            const std::size_t n = active.size();
            std::vector<double> cov(n * n), yh(n), prev(n);
            for (std::size_t a = 0; a < n; ++a) {
                yh[a] = forecasts.at(d, active[a]);
                prev[a] = w[active[a]];
                for (std::size_t b = 0; b < n; ++b) {
                    const double m = M(static_cast<Eigen::Index>(active[a]), static_cast<Eigen::Index>(active[b])) / weight_sum;
                    cov[a * n + b] = a == b ? std::max(m, config.variance_floor) : (1.0 - config.shrinkage) * m;
                }
            }
            std::vector<double> wa = markowitz_weights(yh, cov, prev, config);
            apply_caps(wa, config.name_cap, config.gross_cap);
            for (std::size_t a = 0; a < n; ++a) next[active[a]] = wa[a];
            if (config.hedge) {
                const double var_m = M(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N)) / weight_sum;
                if (var_m > config.variance_floor) {
                    for (std::size_t s = 0; s < N; ++s) {
                        const double beta = M(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(N)) / weight_sum / var_m;
                        next_hedge -= next[s] * beta;
                    }
                }
            }
        } else {
            ++L.flat_days;
        }

        double turnover = std::abs(next_hedge - hedge);
        double cost = 0.0;
        for (std::size_t s = 0; s < N; ++s) {
            const double dw = next[s] - w[s];
            turnover += std::abs(dw);
            cost += config.c_lin * std::abs(dw) + config.c_quad * dw * dw;
        }
        cost *= config.capital;
        pnl -= cost;
        w = std::move(next);
        hedge = next_hedge;
        cum += pnl;

        std::vector<double> pos(N);
        for (std::size_t s = 0; s < N; ++s) pos[s] = w[s] * config.capital;
        L.positions.push_back(std::move(pos));
        L.hedge.push_back(hedge * config.capital);
        L.pnl.push_back(pnl);
        L.cum_pnl.push_back(cum);
        L.turnover.push_back(turnover * config.capital);
        L.costs.push_back(cost);
    }
    return L;
}

}  // namespace alphafuse::backtest
