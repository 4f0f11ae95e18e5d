#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace alphafuse::backtest {

inline const double kAnnualization = std::sqrt(252.0);

// 1 - SS_res / SS_tot; nullopt when y has zero variance or fewer than 2 points.
std::optional<double> r_squared(std::span<const double> y, std::span<const double> yhat);

// (mean(r) - rf) / sd(r) * annualization with the sample (n - 1) deviation;
// nullopt for fewer than 2 observations or zero deviation.
std::optional<double> sharpe(std::span<const double> returns, double rf = 0.0, double annualization = kAnnualization);

std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> x);
// Sample standard deviation; 0 for fewer than 2 points.
double sample_std(std::span<const double> x);

}  // namespace alphafuse::backtest
