#pragma once

#include <vector>

#include "alphafuse/nn/init.hpp"
#include "alphafuse/nn/tape.hpp"
#include "alphafuse/nn/tensor.hpp"
#include "alphafuse/stock2vec/knn_graph.hpp"

namespace alphafuse::stock2vec {

// Shared compatibility network f(e_i, e_j) = v^T tanh(W [e_i; e_j] + b), stored as
// "attn.W" (hidden x 2d), "attn.b" (1 x hidden), "attn.v" (1 x hidden).
void add_stock_attention_parameters(nn::ParameterSet& params, std::size_t dim, std::size_t hidden, nn::Rng& rng);

struct StockAttentionVars {
    nn::Var c;      // n x d, row i = sum_j alpha_ij e_j
    nn::Var alpha;  // n x |S(i)|, columns follow graph.neighbors[i]
};

// All stocks at once. Every neighbor list must have the same non-zero length.
StockAttentionVars stock_attention_all(nn::Var E, const StockGraph& graph, nn::Var W, nn::Var b, nn::Var v);

struct StockAttention {
    std::vector<double> c;
    std::vector<double> alpha;
};

// Single stock, plain evaluation. Throws StructuralError when S(i) is empty.
StockAttention stock_attention(std::size_t i, const StockEmbeddingSet& emb, const StockGraph& graph,
                               const nn::ParameterSet& params);

}  // namespace alphafuse::stock2vec
