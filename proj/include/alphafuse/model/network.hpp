#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphafuse/model/config.hpp"
#include "alphafuse/model/dataset.hpp"
#include "alphafuse/nn/tape.hpp"
#include "alphafuse/nn/tensor.hpp"
#include "alphafuse/stock2vec/glove.hpp"
#include "alphafuse/stock2vec/knn_graph.hpp"

namespace alphafuse::model {

// Parameter keys per module:
//   graph  stock.E, attn.W, attn.b, attn.v
//   tech   tech.W (m x l), tech.b
//   always lstm.fwd.W, lstm.fwd.b, lstm.bwd.W, lstm.bwd.b, tattn.W, tattn.b, tattn.u, head.W, head.b
nn::ParameterSet init_parameters(const ModelConfig& config, std::size_t num_stocks,
                                 const stock2vec::StockEmbeddingSet* init);

// g = ReLU(W f + b); with `nonneg` the weights pass through ReLU first.
nn::Var tech_embed(nn::Var f, nn::Var W, nn::Var b, bool nonneg = false);

// [c, g, o] restricted to enabled modules; StructuralError if an enabled part is missing.
nn::Var assemble_input(const std::optional<nn::Var>& c, const std::optional<nn::Var>& g,
                       const std::optional<nn::Var>& o, const ModuleFlags& modules);

struct TemporalAttentionVars {
    nn::Var out;   // B x width
    nn::Var beta;  // B x T
};

// s_p = u^T tanh(W v_p + b), beta = softmax(s), out = sum_p beta_p v_p.
TemporalAttentionVars temporal_attention(const std::vector<nn::Var>& v, nn::Var W, nn::Var b, nn::Var u);

// Linear: W v + b. Softmax: softmax(W v + b); ConfigError with a single output.
nn::Var predict_head(nn::Var v_out, nn::Var W, nn::Var b, HeadMode mode);

struct ForwardVars {
    nn::Var yhat;   // B x head_outputs
    nn::Var beta;   // B x T
    std::optional<nn::Var> alpha;  // n x k stock attention
};

// Leaves are bound through tape.parameter() so gradients land in `params`.
ForwardVars forward(nn::Tape& tape, nn::ParameterSet& params, const ModelConfig& config,
                    const stock2vec::StockGraph* graph, const FeatureStore& store, std::span<const Sample> batch);

// (1/N) sum (y - yhat)^2; EmptyInputError on an empty batch.
double mse_loss(std::span<const double> y, std::span<const double> yhat);

}  // namespace alphafuse::model
