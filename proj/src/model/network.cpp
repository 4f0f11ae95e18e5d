#include "alphafuse/model/network.hpp"

#include <map>

#include "alphafuse/common/errors.hpp"
#include "alphafuse/nn/init.hpp"
#include "alphafuse/nn/lstm.hpp"
#include "alphafuse/nn/ops.hpp"
#include "alphafuse/stock2vec/stock_attention.hpp"

namespace alphafuse::model {

namespace ops = nn::ops;

nn::ParameterSet init_parameters(const ModelConfig& config, std::size_t num_stocks,
                                 const stock2vec::StockEmbeddingSet* init) {
    config.validate();
    nn::Rng rng(config.seed);
    nn::ParameterSet p;
    if (config.modules.graph) {
        nn::Tensor E(num_stocks, config.d);
        if (init) {
            if (init->size() != num_stocks || init->dim != config.d) {
                throw StructuralError("init_parameters: embedding set is " + std::to_string(init->size()) + "x" +
                                      std::to_string(init->dim) + ", expected " + std::to_string(num_stocks) + "x" +
                                      std::to_string(config.d));
            }
            std::copy(init->E.begin(), init->E.end(), E.data());
        } else {
            E = nn::uniform(num_stocks, config.d, -0.5 / static_cast<double>(config.d),
                            0.5 / static_cast<double>(config.d), rng);
        }
        p.add("stock.E", std::move(E));
        stock2vec::add_stock_attention_parameters(p, config.d, config.attn_hidden, rng);
    }
    if (config.modules.tech) {
        if (config.l == 0) throw ConfigError("init_parameters: factor count l is unset");
        p.add("tech.W", nn::glorot_uniform(config.m, config.l, rng));
        p.add("tech.b", nn::Tensor(1, config.m));
    }
    nn::add_lstm_parameters(p, "lstm.fwd", config.input_dim(), config.hidden, rng);
    nn::add_lstm_parameters(p, "lstm.bwd", config.input_dim(), config.hidden, rng);
    p.add("tattn.W", nn::glorot_uniform(config.temporal_hidden, 2 * config.hidden, rng));
    p.add("tattn.b", nn::Tensor(1, config.temporal_hidden));
    p.add("tattn.u", nn::glorot_uniform(1, config.temporal_hidden, rng));
    p.add("head.W", nn::glorot_uniform(config.head_outputs, 2 * config.hidden, rng));
    p.add("head.b", nn::Tensor(1, config.head_outputs));
    return p;
}

nn::Var tech_embed(nn::Var f, nn::Var W, nn::Var b, bool nonneg) {
    return ops::relu(ops::affine(f, nonneg ? ops::relu(W) : W, b));
}

nn::Var assemble_input(const std::optional<nn::Var>& c, const std::optional<nn::Var>& g,
                       const std::optional<nn::Var>& o, const ModuleFlags& modules) {
    std::vector<nn::Var> parts;
    auto take = [&](bool enabled, const std::optional<nn::Var>& v, const char* what) {
        if (!enabled) return;
        if (!v) throw StructuralError(std::string("assemble_input: ") + what + " module enabled but input missing");
        parts.push_back(*v);
    };
    take(modules.graph, c, "graph");
    take(modules.tech, g, "tech");
    take(modules.news, o, "news");
    if (parts.empty()) throw StructuralError("assemble_input: no module enabled");
    return parts.size() == 1 ? parts.front() : ops::concat(parts);
}

TemporalAttentionVars temporal_attention(const std::vector<nn::Var>& v, nn::Var W, nn::Var b, nn::Var u) {
    if (v.empty()) throw StructuralError("temporal_attention: empty sequence");
    std::vector<nn::Var> scores;
    scores.reserve(v.size());
    for (const nn::Var& vp : v) scores.push_back(ops::linear(ops::tanh(ops::affine(vp, W, b)), u));
    nn::Var beta = ops::softmax(scores.size() == 1 ? scores.front() : ops::concat(scores));
    nn::Var out = ops::mul_col(v[0], ops::slice_cols(beta, 0, 1));
    for (std::size_t p = 1; p < v.size(); ++p) out = ops::add(out, ops::mul_col(v[p], ops::slice_cols(beta, p, 1)));
    return {out, beta};
}

nn::Var predict_head(nn::Var v_out, nn::Var W, nn::Var b, HeadMode mode) {
    nn::Var z = ops::affine(v_out, W, b);
    if (mode == HeadMode::Linear) return z;
    if (z.cols() < 2) throw ConfigError("predict_head: softmax over a single output is constant");
    return ops::softmax(z);
}

ForwardVars forward(nn::Tape& tape, nn::ParameterSet& params, const ModelConfig& config,
                    const stock2vec::StockGraph* graph, const FeatureStore& store, std::span<const Sample> batch) {
    if (batch.empty()) throw EmptyInputError("forward: empty batch");
    std::map<std::string, nn::Var> P;
    for (auto& [name, p] : params) P.emplace(name, tape.parameter(p));
    auto at = [&](const std::string& name) {
        auto it = P.find(name);
        if (it == P.end()) throw LookupError("forward: missing parameter '" + name + "'");
        return it->second;
    };
    const std::size_t B = batch.size();
    ForwardVars out;

    std::optional<nn::Var> c;
    if (config.modules.graph) {
        if (!graph) throw StructuralError("forward: graph module enabled without a graph");
        nn::Var E = config.fine_tune_embeddings ? at("stock.E") : tape.constant(params.at("stock.E").value);
        auto att = stock2vec::stock_attention_all(E, *graph, at("attn.W"), at("attn.b"), at("attn.v"));
        std::vector<std::size_t> rows(B);
        for (std::size_t r = 0; r < B; ++r) rows[r] = batch[r].stock;
        c = ops::gather_rows(att.c, rows);
        out.alpha = att.alpha;
    }

    std::vector<nn::Var> seq;
    seq.reserve(config.T);
    for (std::size_t p = 0; p < config.T; ++p) {
        std::optional<nn::Var> g, o;
        if (config.modules.tech) {
            if (store.num_factors != config.l) {
                throw StructuralError("forward: store has " + std::to_string(store.num_factors) + " factors, config l = " +
                                      std::to_string(config.l));
            }
            nn::Tensor f(B, store.num_factors);
            for (std::size_t r = 0; r < B; ++r) {
                const std::size_t day = batch[r].anchor - config.T + p;
                const auto row = store.tech_row(day, batch[r].stock);
                std::copy(row.begin(), row.end(), f.data() + r * store.num_factors);
            }
            g = tech_embed(tape.constant(std::move(f)), at("tech.W"), at("tech.b"), config.nonneg_tech);
        }
        if (config.modules.news) {
            if (store.news_dim != config.d_w) {
                throw StructuralError("forward: store news width " + std::to_string(store.news_dim) + ", config d_w = " +
                                      std::to_string(config.d_w));
            }
            nn::Tensor nv(B, store.news_dim);
            for (std::size_t r = 0; r < B; ++r) {
                const std::size_t day = batch[r].anchor - config.T + p;
                const auto row = store.news_row(day, batch[r].stock);
                std::copy(row.begin(), row.end(), nv.data() + r * store.news_dim);
            }
            o = tape.constant(std::move(nv));
        }
        seq.push_back(assemble_input(c, g, o, config.modules));
    }

    const auto v = nn::bilstm(seq, {at("lstm.fwd.W"), at("lstm.fwd.b")}, {at("lstm.bwd.W"), at("lstm.bwd.b")},
                              config.hidden);
    const auto ta = temporal_attention(v, at("tattn.W"), at("tattn.b"), at("tattn.u"));
    out.beta = ta.beta;
    out.yhat = predict_head(ta.out, at("head.W"), at("head.b"), config.head);
    return out;
}

double mse_loss(std::span<const double> y, std::span<const double> yhat) {
    if (y.empty()) throw EmptyInputError("mse_loss: empty batch");
    if (y.size() != yhat.size()) throw StructuralError("mse_loss: lengths differ");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    return s / static_cast<double>(y.size());
}

}  // namespace alphafuse::model
