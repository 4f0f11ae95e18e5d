#include "alphafuse/stock2vec/glove.hpp"

#include <cmath>
#include <random>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::stock2vec {

double glove_weight(double x, double x_max, double alpha) {
    if (!(x_max > 0.0)) throw ConfigError("glove_weight: x_max must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("glove_weight: alpha must lie in (0, 1]");
    if (x < 0.0) throw DomainError("glove_weight: negative count");
    return x < x_max ? std::pow(x / x_max, alpha) : 1.0;
}

EmbeddingTable StockEmbeddingSet::to_table() const {
    return EmbeddingTable{symbols, dim, E};
}

StockEmbeddingSet StockEmbeddingSet::from_table(const EmbeddingTable& table) {
    StockEmbeddingSet s;
    s.symbols = table.labels;
    s.dim = table.dim;
    s.E = table.values;
    s.bias.assign(s.symbols.size(), 0.0);
    return s;
}

namespace {

double residual(const StockEmbeddingSet& emb, std::size_t i, std::size_t j, double logx) {
    const auto ei = emb.row(i);
    const auto ej = emb.row(j);
    double dot = 0.0;
    for (std::size_t k = 0; k < emb.dim; ++k) dot += ei[k] * ej[k];
    return dot + emb.bias[i] + emb.bias[j] - logx;
}

}  // namespace

double glove_loss(const text::CooccurrenceMatrix& X, const StockEmbeddingSet& emb, const GloveConfig& config) {
    double J = 0.0;
    for (const auto& e : X.entries()) {
        const double x = static_cast<double>(e.count);
        const double r = residual(emb, e.i, e.j, std::log(x));
        J += glove_weight(x, config.x_max, config.alpha) * r * r;
    }
    return J;
}

void glove_gradient(const text::CooccurrenceMatrix& X, const StockEmbeddingSet& emb, const GloveConfig& config,
                    std::vector<double>& grad_E, std::vector<double>& grad_bias) {
    grad_E.assign(emb.E.size(), 0.0);
    grad_bias.assign(emb.bias.size(), 0.0);
    const std::size_t d = emb.dim;
    for (const auto& e : X.entries()) {
        const double x = static_cast<double>(e.count);
        const double g = 2.0 * glove_weight(x, config.x_max, config.alpha) * residual(emb, e.i, e.j, std::log(x));
        for (std::size_t k = 0; k < d; ++k) {
            grad_E[e.i * d + k] += g * emb.E[e.j * d + k];
            grad_E[e.j * d + k] += g * emb.E[e.i * d + k];
        }
        grad_bias[e.i] += g;
        grad_bias[e.j] += g;
    }
}

GloveResult train_glove(const text::CooccurrenceMatrix& X, const GloveConfig& config) {
    if (X.nonzero_pairs() == 0) throw TrainingError("train_glove: no co-occurrence signal");
    if (config.dim == 0) throw ConfigError("train_glove: dim must be positive");
    if (!(config.lr > 0.0)) throw ConfigError("train_glove: lr must be positive");
    glove_weight(0.0, config.x_max, config.alpha);

    GloveResult result;
    auto& emb = result.embeddings;
    emb.symbols = X.symbols();
    emb.dim = config.dim;
    const std::size_t n = X.size();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double scale = 1.0 / static_cast<double>(config.dim);
    emb.E.resize(n * config.dim);
    for (double& v : emb.E) v = (unit(rng) - 0.5) * scale;
    emb.bias.resize(n);
    for (double& v : emb.bias) v = (unit(rng) - 0.5) * scale;

    std::vector<double> gE, gb;
    result.loss_trace.push_back(glove_loss(X, emb, config));
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        glove_gradient(X, emb, config, gE, gb);
        for (std::size_t i = 0; i < emb.E.size(); ++i) emb.E[i] -= config.lr * gE[i];
        for (std::size_t i = 0; i < n; ++i) emb.bias[i] -= config.lr * gb[i];
        const double J = glove_loss(X, emb, config);
        if (!std::isfinite(J)) {
            throw NumericalFault("train_glove: loss diverged at epoch " + std::to_string(epoch + 1) +
                                 "; lower the learning rate");
        }
        result.loss_trace.push_back(J);
    }
    return result;
}

}  // namespace alphafuse::stock2vec
