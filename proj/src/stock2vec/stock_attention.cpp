#include "alphafuse/stock2vec/stock_attention.hpp"

#include "alphafuse/common/errors.hpp"
#include "alphafuse/nn/ops.hpp"

namespace alphafuse::stock2vec {

void add_stock_attention_parameters(nn::ParameterSet& params, std::size_t dim, std::size_t hidden, nn::Rng& rng) {
    params.add("attn.W", nn::glorot_uniform(hidden, 2 * dim, rng));
    params.add("attn.b", nn::Tensor(1, hidden));
    params.add("attn.v", nn::glorot_uniform(1, hidden, rng));
}

StockAttentionVars stock_attention_all(nn::Var E, const StockGraph& graph, nn::Var W, nn::Var b, nn::Var v) {
    namespace ops = nn::ops;
    const std::size_t n = graph.size();
    if (n == 0 || E.rows() != n) {
        throw StructuralError("stock_attention: graph has " + std::to_string(n) + " nodes but E is " +
                              E.value().shape_string());
    }
    const std::size_t k = graph.neighbors[0].size();
    if (k == 0) throw StructuralError("stock_attention: empty neighbor set");
    std::vector<std::size_t> self_idx, nbr_idx;
    self_idx.reserve(n * k);
    nbr_idx.reserve(n * k);
    for (std::size_t i = 0; i < n; ++i) {
        if (graph.neighbors[i].size() != k) throw StructuralError("stock_attention: ragged neighbor lists");
        for (std::size_t j : graph.neighbors[i]) {
            self_idx.push_back(i);
            nbr_idx.push_back(j);
        }
    }
    nn::Var ej = ops::gather_rows(E, nbr_idx);
    nn::Var pair = ops::concat({ops::gather_rows(E, self_idx), ej});
    nn::Var scores = ops::linear(ops::tanh(ops::affine(pair, W, b)), v);
    nn::Var alpha = ops::softmax(ops::reshape(scores, n, k));
    nn::Var weighted = ops::mul_col(ej, ops::reshape(alpha, n * k, 1));
    return {ops::sum_row_groups(weighted, k), alpha};
}

StockAttention stock_attention(std::size_t i, const StockEmbeddingSet& emb, const StockGraph& graph,
                               const nn::ParameterSet& params) {
    if (i >= graph.size()) throw LookupError("stock_attention: stock index out of range");
    const auto& nbrs = graph.neighbors[i];
    if (nbrs.empty()) throw StructuralError("stock_attention: stock has no neighbors");
    nn::Tape tape;
    const std::size_t d = emb.dim;
    nn::Tensor pairs(nbrs.size(), 2 * d);
    nn::Tensor ej(nbrs.size(), d);
    for (std::size_t r = 0; r < nbrs.size(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            pairs(r, c) = emb.E[i * d + c];
            pairs(r, d + c) = emb.E[nbrs[r] * d + c];
            ej(r, c) = emb.E[nbrs[r] * d + c];
        }
    }
    namespace ops = nn::ops;
    nn::Var W = tape.constant(params.at("attn.W").value);
    nn::Var b = tape.constant(params.at("attn.b").value);
    nn::Var v = tape.constant(params.at("attn.v").value);
    nn::Var scores = ops::linear(ops::tanh(ops::affine(tape.constant(pairs), W, b)), v);
    nn::Var alpha = ops::softmax(ops::reshape(scores, 1, nbrs.size()));
    StockAttention out;
    out.alpha.assign(alpha.value().values().begin(), alpha.value().values().end());
    out.c.assign(d, 0.0);
    for (std::size_t r = 0; r < nbrs.size(); ++r) {
        for (std::size_t c = 0; c < d; ++c) out.c[c] += out.alpha[r] * ej(r, c);
    }
    return out;
}

}  // namespace alphafuse::stock2vec
