#pragma once

#include <span>
#include <utility>
#include <vector>

#include "alphafuse/model/dataset.hpp"

namespace alphafuse::model {

// Row-major design matrix.
struct Design {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

struct RidgeModel {
    std::vector<double> coef;
    double intercept = 0.0;
    double lambda = 0.0;
};

// Solves (Xc^T Xc + lambda I) beta = Xc^T yc on centered data with LDLT; the
// intercept is unpenalized. Throws TrainingError when the system is singular.
RidgeModel ridge_fit(const Design& X, std::span<const double> y, double lambda);
std::vector<double> ridge_predict(const RidgeModel& model, const Design& X);

// 1e-5, 1e-4, ..., 10
std::vector<double> default_ridge_grid();

struct RidgeSelection {
    RidgeModel model;
    std::vector<std::pair<double, double>> validation_mse;  // (lambda, mse)
};

// Picks the lambda with the lowest validation MSE, then refits on train + validation.
RidgeSelection select_ridge(const Design& X_train, std::span<const double> y_train, const Design& X_val,
                            std::span<const double> y_val, const std::vector<double>& grid);

// Concatenated daily [factors, news] vectors over the T lookback days.
Design ridge_design(const FeatureStore& store, std::span<const Sample> samples, std::size_t T, bool tech, bool news);

}  // namespace alphafuse::model
