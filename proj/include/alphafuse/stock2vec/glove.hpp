#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "alphafuse/common/embedding_io.hpp"
#include "alphafuse/text/cooccurrence.hpp"

namespace alphafuse::stock2vec {

// (x / x_max)^alpha below x_max, 1 above. Throws ConfigError for x_max <= 0 or alpha outside (0, 1].
double glove_weight(double x, double x_max, double alpha);

struct StockEmbeddingSet {
    std::vector<std::string> symbols;
    std::size_t dim = 0;
    std::vector<double> E;     // symbols.size() x dim
    std::vector<double> bias;  // symbols.size()

    std::size_t size() const noexcept { return symbols.size(); }
    std::span<const double> row(std::size_t i) const { return {E.data() + i * dim, dim}; }

    // Biases are not part of the text export.
    EmbeddingTable to_table() const;
    static StockEmbeddingSet from_table(const EmbeddingTable& table);
};

struct GloveConfig {
    std::size_t dim = 32;
    double x_max = 100.0;
    double alpha = 0.75;
    std::size_t epochs = 200;
    double lr = 0.05;
    std::uint64_t seed = 1;
};

// J = sum over unordered pairs i < j with X_ij > 0 of f(X_ij) (e_i.e_j + b_i + b_j - log X_ij)^2
double glove_loss(const text::CooccurrenceMatrix& X, const StockEmbeddingSet& emb, const GloveConfig& config);
// Gradient of glove_loss; grad_E and grad_bias are resized and overwritten.
void glove_gradient(const text::CooccurrenceMatrix& X, const StockEmbeddingSet& emb, const GloveConfig& config,
                    std::vector<double>& grad_E, std::vector<double>& grad_bias);

struct GloveResult {
    StockEmbeddingSet embeddings;
    // Loss before the first step and after each epoch (epochs + 1 entries).
    std::vector<double> loss_trace;
};

// Full-batch gradient descent from Uniform(-0.5, 0.5) / dim. Throws TrainingError
// when X has no positive entry.
GloveResult train_glove(const text::CooccurrenceMatrix& X, const GloveConfig& config);

}  // namespace alphafuse::stock2vec
