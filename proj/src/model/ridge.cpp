#include "alphafuse/model/ridge.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::model {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const Mat> view(const Design& X) {
    return Eigen::Map<const Mat>(X.values.data(), static_cast<Eigen::Index>(X.rows), static_cast<Eigen::Index>(X.cols));
}

double mse(std::span<const double> y, const std::vector<double>& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - p[i]) * (y[i] - p[i]);
    return s / static_cast<double>(y.size());
}

}  // namespace

RidgeModel ridge_fit(const Design& X, std::span<const double> y, double lambda) {
    if (!(lambda >= 0.0)) throw ConfigError("ridge_fit: lambda must be non-negative");
    if (X.rows == 0 || X.rows != y.size()) throw StructuralError("ridge_fit: design rows do not match labels");
    const auto A = view(X);
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    const Eigen::RowVectorXd mu = A.colwise().mean();
    const double ybar = yv.mean();
    const Mat Xc = A.rowwise() - mu;
    Eigen::MatrixXd G = Xc.transpose() * Xc;
    G.diagonal().array() += lambda;
    const Eigen::VectorXd rhs = Xc.transpose() * (yv.array() - ybar).matrix();

    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    const auto D = ldlt.vectorD().cwiseAbs();
    const double scale = std::max(D.maxCoeff(), 1.0);
    if (ldlt.info() != Eigen::Success || D.minCoeff() <= 1e-12 * scale) {
        throw TrainingError("ridge_fit: singular normal equations; use lambda > 0");
    }
    const Eigen::VectorXd beta = ldlt.solve(rhs);
    RidgeModel m;
    m.lambda = lambda;
    m.coef.assign(beta.data(), beta.data() + beta.size());
    m.intercept = ybar - mu.dot(beta);
    return m;
}

std::vector<double> ridge_predict(const RidgeModel& model, const Design& X) {
    if (X.cols != model.coef.size()) throw StructuralError("ridge_predict: feature count mismatch");
    std::vector<double> out(X.rows, model.intercept);
    for (std::size_t r = 0; r < X.rows; ++r) {
        const auto row = X.row(r);
        for (std::size_t c = 0; c < X.cols; ++c) out[r] += row[c] * model.coef[c];
    }
    return out;
}

std::vector<double> default_ridge_grid() {
    return {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
}

RidgeSelection select_ridge(const Design& X_train, std::span<const double> y_train, const Design& X_val,
                            std::span<const double> y_val, const std::vector<double>& grid) {
    if (grid.empty()) throw ConfigError("select_ridge: empty lambda grid");
    RidgeSelection sel;
    double best = std::numeric_limits<double>::infinity();
    double best_lambda = grid.front();
    for (double lambda : grid) {
        const auto m = ridge_fit(X_train, y_train, lambda);
        const double e = X_val.rows ? mse(y_val, ridge_predict(m, X_val)) : 0.0;
        sel.validation_mse.emplace_back(lambda, e);
        if (e < best) {
            best = e;
            best_lambda = lambda;
        }
    }
    Design all{X_train.rows + X_val.rows, X_train.cols, X_train.values};
    all.values.insert(all.values.end(), X_val.values.begin(), X_val.values.end());
    std::vector<double> y(y_train.begin(), y_train.end());
    y.insert(y.end(), y_val.begin(), y_val.end());
    sel.model = ridge_fit(all, y, best_lambda);
    return sel;
}

Design ridge_design(const FeatureStore& store, std::span<const Sample> samples, std::size_t T, bool tech, bool news) {
    Design X;
    X.rows = samples.size();
    X.cols = T * ((tech ? store.num_factors : 0) + (news ? store.news_dim : 0));
    X.values.reserve(X.rows * X.cols);
    for (const auto& s : samples) {
        for (std::size_t p = 0; p < T; ++p) {
            const std::size_t day = s.anchor - T + p;
            if (tech) {
                const auto r = store.tech_row(day, s.stock);
                X.values.insert(X.values.end(), r.begin(), r.end());
            }
            if (news) {
                const auto r = store.news_row(day, s.stock);
                X.values.insert(X.values.end(), r.begin(), r.end());
            }
        }
    }
    return X;
}

}  // namespace alphafuse::model
