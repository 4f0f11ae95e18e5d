#pragma once

#include <limits>
#include <span>
#include <vector>

#include "alphafuse/backtest/ledger.hpp"
#include "alphafuse/common/panel.hpp"

namespace alphafuse::backtest {

struct MarkowitzConfig {
    double risk_aversion = 1.0;  // gamma
    double halflife = 20.0;      // EWMA covariance, trading days
    double shrinkage = 0.1;      // toward the variance diagonal
    double variance_floor = 1e-10;
    std::size_t min_history = 20;
    double c_lin = 5e-4;         // per unit |dw|
    double c_quad = 0.0;         // per unit dw^2
    double name_cap = 0.05;      // fraction of capital per name
    double gross_cap = 1.0;      // fraction of capital, long + short
    bool hedge = true;
    double capital = 5e7;
    std::size_t max_sweeps = 200;
    double tolerance = 1e-12;
};

// argmin -yhat.w + gamma w'Sw + c_lin |w - w0|_1 + c_quad |w - w0|^2. Without a linear
// cost this is the closed form (2 gamma S + 2 c_quad I)^-1 (yhat + 2 c_quad w0);
// otherwise cyclic coordinate descent from w0. S is n x n row-major.
std::vector<double> markowitz_weights(std::span<const double> yhat, std::span<const double> cov,
                                      std::span<const double> previous, const MarkowitzConfig& config);

// Per-name clip then gross rescale.
void apply_caps(std::vector<double>& w, double name_cap, double gross_cap);

// Daily mean-variance book on EWMA covariance of past returns, beta-hedged against the
// equal-weight market return. Positions and P&L are in currency (weights x capital).
TradeLedger simulate_markowitz(const DailyGrid& forecasts, const DailyGrid& returns, const MarkowitzConfig& config);

}  // namespace alphafuse::backtest
