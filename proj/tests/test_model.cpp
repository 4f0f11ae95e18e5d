#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "alphafuse/common/errors.hpp"
#include "alphafuse/market/factors.hpp"
#include "alphafuse/model/config.hpp"
#include "alphafuse/model/dataset.hpp"
#include "alphafuse/model/network.hpp"
#include "alphafuse/model/ridge.hpp"
#include "alphafuse/model/trainer.hpp"
#include "alphafuse/nn/init.hpp"
#include "alphafuse/nn/ops.hpp"
#include "helpers.hpp"
#include "support/gradient_suite.hpp"

using namespace alphafuse;
using namespace alphafuse::model;
namespace o = alphafuse::nn::ops;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

nn::Tensor random_tensor(std::size_t r, std::size_t c, std::uint64_t seed, double scale = 1.0) {
    nn::Rng rng(seed);
    return nn::uniform(r, c, -scale, scale, rng);
}

std::vector<double> softmax(std::vector<double> s) {
    const double m = *std::max_element(s.begin(), s.end());
    double z = 0.0;
    for (double& x : s) z += (x = std::exp(x - m));
    for (double& x : s) x /= z;
    return s;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// One LSTM step in plain doubles, gate order i, f, g, o.
void lstm_step(const nn::Tensor& W, const nn::Tensor& b, const std::vector<double>& x, std::vector<double>& h,
               std::vector<double>& c) {
    const std::size_t H = h.size();
    std::vector<double> in(x);
    in.insert(in.end(), h.begin(), h.end());
    std::vector<double> z(4 * H);
    for (std::size_t r = 0; r < 4 * H; ++r) {
        z[r] = b(0, r);
        for (std::size_t k = 0; k < in.size(); ++k) z[r] += W(r, k) * in[k];
    }
    for (std::size_t u = 0; u < H; ++u) {
        const double i = sigmoid(z[u]), f = sigmoid(z[H + u]), g = std::tanh(z[2 * H + u]), og = sigmoid(z[3 * H + u]);
        c[u] = f * c[u] + i * g;
        h[u] = og * std::tanh(c[u]);
    }
}

std::set<std::string> keys(const nn::ParameterSet& p) {
    const auto n = p.names();
    return {n.begin(), n.end()};
}

}  // namespace

TEST(TechEmbed, ZeroWeightsGiveZero) {
    nn::Tape t;
    auto g = tech_embed(t.constant(random_tensor(2, 3, 1)), t.constant(nn::Tensor(4, 3)), t.constant(nn::Tensor(1, 4)));
    for (double v : g.value().values()) EXPECT_EQ(v, 0.0);
}

TEST(TechEmbed, IdentityClipsNegatives) {
    nn::Tape t;
    nn::Tensor W(3, 3);
    for (std::size_t i = 0; i < 3; ++i) W(i, i) = 1.0;
    auto g = tech_embed(t.constant(nn::Tensor(1, 3, {-1.0, 2.0, -0.5})), t.constant(W), t.constant(nn::Tensor(1, 3)));
    EXPECT_EQ(vec(g.value().values()), (std::vector<double>{0.0, 2.0, 0.0}));
}

TEST(TechEmbed, MatchesMatrixMultiplyAndClip) {
    nn::Tape t;
    const auto f = random_tensor(5, 4, 2), W = random_tensor(6, 4, 3), b = random_tensor(1, 6, 4);
    auto g = tech_embed(t.constant(f), t.constant(W), t.constant(b));
    for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t u = 0; u < 6; ++u) {
            double a = b(0, u);
            for (std::size_t k = 0; k < 4; ++k) a += W(u, k) * f(r, k);
            EXPECT_NEAR(g.value()(r, u), std::max(a, 0.0), 1e-14);
            EXPECT_GE(g.value()(r, u), 0.0);
        }
    }
}

TEST(AssembleInput, ConcatenatesInFixedOrder) {
    nn::Tape t;
    const auto c = random_tensor(1, 2, 5), g = random_tensor(1, 3, 6), ov = random_tensor(1, 4, 7);
    auto h = assemble_input(t.constant(c), t.constant(g), t.constant(ov), ModuleFlags{});
    ASSERT_EQ(h.cols(), 9u);
    std::vector<double> want = vec(c.values());
    want.insert(want.end(), g.values().begin(), g.values().end());
    want.insert(want.end(), ov.values().begin(), ov.values().end());
    EXPECT_EQ(vec(h.value().values()), want);
    auto back = o::slice_cols(h, 2, 3);
    EXPECT_EQ(vec(back.value().values()), vec(g.values()));
}

TEST(AssembleInput, DisabledNewsAndMissingParts) {
    nn::Tape t;
    auto c = t.constant(random_tensor(1, 2, 5));
    auto g = t.constant(random_tensor(1, 3, 6));
    EXPECT_EQ(assemble_input(c, g, std::nullopt, ModuleFlags{true, true, false}).cols(), 5u);
    EXPECT_THROW(assemble_input(c, std::nullopt, std::nullopt, ModuleFlags{}), StructuralError);
}

TEST(TemporalAttention, IdenticalStepsGiveUniformWeights) {
    nn::Tape t;
    const auto v = random_tensor(2, 4, 8);
    std::vector<nn::Var> seq(3, t.constant(v));
    auto ta = temporal_attention(seq, t.constant(random_tensor(3, 4, 9)), t.constant(random_tensor(1, 3, 10)),
                                 t.constant(random_tensor(1, 3, 11)));
    for (double b : ta.beta.value().values()) EXPECT_NEAR(b, 1.0 / 3.0, 1e-15);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(ta.out.value().values()[i], v.values()[i], 1e-15);
}

TEST(TemporalAttention, SingleStep) {
    nn::Tape t;
    const auto v = random_tensor(2, 4, 12);
    auto ta = temporal_attention({t.constant(v)}, t.constant(random_tensor(3, 4, 9)),
                                 t.constant(random_tensor(1, 3, 10)), t.constant(random_tensor(1, 3, 11)));
    EXPECT_EQ(vec(ta.beta.value().values()), (std::vector<double>{1.0, 1.0}));
    EXPECT_EQ(vec(ta.out.value().values()), vec(v.values()));
    EXPECT_THROW(temporal_attention({}, ta.beta, ta.beta, ta.beta), StructuralError);
}

TEST(TemporalAttention, MatchesIndependentSoftmax) {
    nn::Tape t;
    const std::size_t T = 5, w = 4, h = 3;
    std::vector<nn::Tensor> v;
    std::vector<nn::Var> seq;
    for (std::size_t p = 0; p < T; ++p) {
        v.push_back(random_tensor(1, w, 20 + p));
        seq.push_back(t.constant(v.back()));
    }
    const auto W = random_tensor(h, w, 30), b = random_tensor(1, h, 31), u = random_tensor(1, h, 32);
    auto ta = temporal_attention(seq, t.constant(W), t.constant(b), t.constant(u));
    std::vector<double> s(T, 0.0);
    for (std::size_t p = 0; p < T; ++p) {
        for (std::size_t j = 0; j < h; ++j) {
            double a = b(0, j);
            for (std::size_t k = 0; k < w; ++k) a += W(j, k) * v[p](0, k);
            s[p] += u(0, j) * std::tanh(a);
        }
    }
    const auto beta = softmax(s);
    double sum = 0.0;
    for (std::size_t p = 0; p < T; ++p) {
        EXPECT_NEAR(ta.beta.value()(0, p), beta[p], 1e-14);
        EXPECT_GT(ta.beta.value()(0, p), 0.0);
        sum += ta.beta.value()(0, p);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    for (std::size_t k = 0; k < w; ++k) {
        double lo = 1e300, hi = -1e300, want = 0.0;
        for (std::size_t p = 0; p < T; ++p) {
            lo = std::min(lo, v[p](0, k));
            hi = std::max(hi, v[p](0, k));
            want += beta[p] * v[p](0, k);
        }
        EXPECT_NEAR(ta.out.value()(0, k), want, 1e-14);
        EXPECT_GE(ta.out.value()(0, k), lo - 1e-12);
        EXPECT_LE(ta.out.value()(0, k), hi + 1e-12);
    }
}

TEST(PredictHead, LinearAndSoftmaxModes) {
    nn::Tape t;
    const auto v = random_tensor(3, 4, 40);
    auto y = predict_head(t.constant(v), t.constant(nn::Tensor(1, 4)), t.constant(nn::Tensor(1, 1, 0.25)),
                          HeadMode::Linear);
    for (double x : y.value().values()) EXPECT_EQ(x, 0.25);

    auto p = predict_head(t.constant(v), t.constant(nn::Tensor(3, 4)), t.constant(nn::Tensor(1, 3)), HeadMode::Softmax);
    for (double x : p.value().values()) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
    EXPECT_THROW(predict_head(t.constant(v), t.constant(nn::Tensor(1, 4)), t.constant(nn::Tensor(1, 1)),
                              HeadMode::Softmax),
                 ConfigError);

    const auto W = random_tensor(1, 4, 41);
    auto z = predict_head(t.constant(v), t.constant(W), t.constant(nn::Tensor(1, 1, -0.1)), HeadMode::Linear);
    for (std::size_t r = 0; r < 3; ++r) {
        double want = -0.1;
        for (std::size_t k = 0; k < 4; ++k) want += W(0, k) * v(r, k);
        EXPECT_NEAR(z.value()(r, 0), want, 1e-15);
    }
}

TEST(MseLoss, Examples) {
    const std::vector<double> y{0.3, -0.2, 0.5};
    EXPECT_EQ(mse_loss(y, y), 0.0);
    EXPECT_DOUBLE_EQ(mse_loss(std::vector<double>{0, 0}, std::vector<double>{1, 1}), 1.0);
    const std::vector<double> yhat{0.1, 0.1, 0.1};
    std::vector<double> doubled;
    for (std::size_t i = 0; i < 3; ++i) doubled.push_back(y[i] + 2.0 * (yhat[i] - y[i]));
    EXPECT_NEAR(mse_loss(y, doubled), 4.0 * mse_loss(y, yhat), 1e-15);
    EXPECT_THROW(mse_loss(std::vector<double>{}, std::vector<double>{}), EmptyInputError);
}

TEST(Ablation, FlagsPerName) {
    EXPECT_EQ(ablation_config("News").modules, (ModuleFlags{false, false, true}));
    EXPECT_EQ(ablation_config("Tech").modules, (ModuleFlags{false, true, false}));
    EXPECT_EQ(ablation_config("Tech + News").modules, (ModuleFlags{false, true, true}));
    EXPECT_EQ(ablation_config("Graph + Tech").modules, (ModuleFlags{true, true, false}));
    EXPECT_EQ(ablation_config("Graph+News").modules, (ModuleFlags{true, false, true}));
    EXPECT_EQ(ablation_config("News-BiLSTM").modules, (ModuleFlags{false, false, true}));
    EXPECT_EQ(ablation_config("Full").modules, (ModuleFlags{true, true, true}));
    EXPECT_THROW(ablation_config("Graph"), ConfigError);

    ModelConfig base;
    base.m = 17;
    base.lr = 0.5;
    const auto c = ablation_config("News", base);
    EXPECT_EQ(c.m, 17u);
    EXPECT_EQ(c.lr, 0.5);
}

TEST(Ablation, CheckpointKeysAreTheEnabledUnion) {
    ModelConfig base;
    base.l = 4;
    base.d = 3;
    base.m = 2;
    base.d_w = 2;
    base.hidden = 2;
    const std::set<std::string> always{"head.W", "head.b", "lstm.bwd.W", "lstm.bwd.b", "lstm.fwd.W",
                                       "lstm.fwd.b", "tattn.W", "tattn.b", "tattn.u"};
    const std::set<std::string> graph{"stock.E", "attn.W", "attn.b", "attn.v"};
    const std::set<std::string> tech{"tech.W", "tech.b"};
    for (const char* name : {"News", "Tech", "Tech+News", "Graph+Tech", "Graph+News", "Full"}) {
        const auto cfg = ablation_config(name, base);
        std::set<std::string> want = always;
        if (cfg.modules.graph) want.insert(graph.begin(), graph.end());
        if (cfg.modules.tech) want.insert(tech.begin(), tech.end());
        EXPECT_EQ(keys(init_parameters(cfg, 5, nullptr)), want) << name;
    }
}

TEST(Dataset, LabelsAreForwardOpenReturns) {
    const auto prices = testing_util::random_walks(3, 40, 5);
    const auto bars = testing_util::panel_from_prices(prices);
    const auto store = build_feature_store(bars, nullptr, nullptr, bars.symbols(), 5);
    for (std::size_t d = 0; d < 40; ++d) {
        for (std::size_t s = 0; s < 3; ++s) {
            const double y = store.label[d * 3 + s];
            if (d >= 1 && d + 5 < 40) {
                EXPECT_NEAR(y, std::log(prices[s][d + 5] / prices[s][d]), 1e-14);
            } else {
                EXPECT_TRUE(std::isnan(y));
            }
        }
    }
}

TEST(Dataset, FeaturesNeverSeeTheLabelWindow) {
    const std::size_t n = 4, days = 120, cut = 90;
    auto prices = testing_util::random_walks(n, days, 6);
    const auto registry = market::FactorRegistry::from_json_text(
        R"({"factors": [{"name": "mom_5", "kind": "momentum", "window": 5},
                        {"name": "vol_10", "kind": "volatility", "window": 10},
                        {"name": "rsi_14", "kind": "rsi", "window": 14},
                        {"name": "reversal_1", "kind": "reversal", "window": 1}]})");
    const auto bars = testing_util::panel_from_prices(prices);
    auto shocked = prices;
    for (auto& series : shocked) {
        for (std::size_t d = cut; d < days; ++d) series[d] *= 3.0 + static_cast<double>(d % 7);
    }
    const auto bars2 = testing_util::panel_from_prices(shocked);
    const auto f1 = market::compute_factors(bars, registry);
    const auto f2 = market::compute_factors(bars2, registry);
    const auto s1 = build_feature_store(bars, &f1, nullptr, bars.symbols(), 5);
    const auto s2 = build_feature_store(bars2, &f2, nullptr, bars.symbols(), 5);
    ModelConfig cfg;
    cfg.l = s1.num_factors;
    cfg.modules = {false, true, false};
    const auto a = make_samples(s1, cfg, {cfg.T, days - 1, std::nullopt, false});
    const auto b = make_samples(s2, cfg, {cfg.T, days - 1, std::nullopt, false});
    ASSERT_EQ(a.samples.size(), b.samples.size());
    std::size_t compared = 0;
    for (const auto& s : a.samples) {
        if (s.anchor > cut) continue;
        for (std::size_t day = s.anchor - cfg.T; day < s.anchor; ++day) {
            const auto r1 = s1.tech_row(day, s.stock);
            const auto r2 = s2.tech_row(day, s.stock);
            ASSERT_TRUE(std::equal(r1.begin(), r1.end(), r2.begin())) << "anchor " << s.anchor;
        }
        ++compared;
    }
    EXPECT_GT(compared, 0u);
}

TEST(Dataset, WindowAndMissingBars) {
    auto toy = gradient_suite::make_toy(3, 12, 3, 2, 0, 1);
    toy.config.modules = {false, true, false};
    toy.store.bar_ok[6 * 3 + 1] = 0;
    const auto set = make_samples(toy.store, toy.config, {3, 11, 10, true});
    for (const auto& s : set.samples) {
        EXPECT_LE(s.anchor + toy.store.horizon, 10u);
        if (s.stock == 1) {
            EXPECT_FALSE(s.anchor >= 7 && s.anchor <= 9) << s.anchor;
        }
    }
    EXPECT_EQ(set.missing_features, 3u);
    EXPECT_TRUE(std::is_sorted(set.samples.begin(), set.samples.end(), [](const Sample& x, const Sample& y) {
        return std::pair(x.anchor, x.stock) < std::pair(y.anchor, y.stock);
    }));
}

TEST(Train, ZeroLabelsFitTheBias) {
    auto toy = gradient_suite::make_toy(4, 80, 3, 3, 2, 2);
    for (auto& s : toy.samples) s.label = 0.0;
    toy.config.epochs = 50;
    toy.config.validation_fraction = 0.0;
    toy.config.lr = 0.01;
    toy.config.batch_size = 1;
    toy.config.modules = {false, true, true};
    const auto r = train(toy.store, toy.samples, toy.config, nullptr, nullptr);
    ASSERT_EQ(r.train_loss.size(), 50u);
    EXPECT_LE(r.train_loss.back(), 1e-6);
    const auto f = predict(r.params, toy.config, nullptr, toy.store, toy.samples);
    double mse = 0.0;
    for (const auto& x : f) mse += x.yhat * x.yhat;
    EXPECT_LE(mse / static_cast<double>(f.size()), 1e-6);
}

TEST(Train, OverfitsTwentySamples) {
    auto toy = gradient_suite::make_toy(4, 8, 3, 3, 2, 3);
    ASSERT_EQ(toy.samples.size(), 20u);
    auto& c = toy.config;
    c.hidden = 16;
    c.m = 8;
    c.temporal_hidden = 8;
    c.epochs = 500;
    c.lr = 0.01;
    c.batch_size = 20;
    c.validation_fraction = 0.0;
    const auto r = train(toy.store, toy.samples, c, nullptr, &toy.graph);
    ASSERT_FALSE(r.train_loss.empty());
    EXPECT_LE(r.train_loss.back(), 0.05 * r.train_loss.front());
}

TEST(Train, DeterministicPerSeed) {
    auto toy = gradient_suite::make_toy(4, 16, 3, 3, 2, 4);
    toy.config.epochs = 5;
    toy.config.batch_size = 8;
    const auto a = train(toy.store, toy.samples, toy.config, nullptr, &toy.graph);
    const auto b = train(toy.store, toy.samples, toy.config, nullptr, &toy.graph);
    EXPECT_EQ(a.train_loss, b.train_loss);
    EXPECT_EQ(a.val_loss, b.val_loss);
    for (const auto& name : a.params.names()) EXPECT_EQ(vec(a.params.at(name).value.values()), vec(b.params.at(name).value.values()));
}

TEST(Train, ChronologicalValidationPurgesOverlap) {
    auto toy = gradient_suite::make_toy(4, 30, 3, 3, 2, 5);
    toy.store.horizon = 3;
    toy.config.horizon = 3;
    toy.config.epochs = 2;
    toy.config.validation = ValidationMode::Chronological;
    const auto r = train(toy.store, toy.samples, toy.config, nullptr, &toy.graph);
    EXPECT_GT(r.validation_samples, 0u);
    EXPECT_EQ(r.val_loss.size(), r.train_loss.size());
}

TEST(Train, RejectsSoftmaxHeadAndEmptyData) {
    auto toy = gradient_suite::make_toy(4, 8, 3, 3, 2, 6);
    EXPECT_THROW(train(toy.store, {}, toy.config, nullptr, &toy.graph), EmptyInputError);
    toy.config.head = HeadMode::Softmax;
    toy.config.head_outputs = 3;
    EXPECT_THROW(train(toy.store, toy.samples, toy.config, nullptr, &toy.graph), ConfigError);
}

TEST(Train, GradientOfTinyModelMatchesFiniteDifferences) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto r = gradient_suite::end_to_end_case(seed);
        EXPECT_LE(r.max_rel_error, 1e-4) << "seed " << seed;
    }
}

TEST(Predict, PureAndOrderIndependent) {
    auto toy = gradient_suite::make_toy(4, 10, 3, 3, 2, 7);
    const auto params = init_parameters(toy.config, 4, nullptr);
    const auto a = predict(params, toy.config, &toy.graph, toy.store, toy.samples);
    const auto b = predict(params, toy.config, &toy.graph, toy.store, toy.samples);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].yhat, b[i].yhat);

    auto shuffled = toy.samples;
    std::mt19937_64 rng(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto c = predict(params, toy.config, &toy.graph, toy.store, shuffled);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto it = std::find_if(a.begin(), a.end(), [&](const Forecast& f) {
            return f.stock == c[i].stock && f.anchor == c[i].anchor;
        });
        ASSERT_NE(it, a.end());
        EXPECT_EQ(it->yhat, c[i].yhat);
    }
}

TEST(Predict, MatchesLayerByLayerComputation) {
    auto toy = gradient_suite::make_toy(2, 4, 2, 0, 2, 8);
    auto cfg = ablation_config("News", toy.config);
    cfg.T = 2;
    cfg.hidden = 2;
    cfg.temporal_hidden = 2;
    const auto params = init_parameters(cfg, 2, nullptr);
    const Sample s{1, 3, 0.0};
    const auto got = predict(params, cfg, nullptr, toy.store, std::span<const Sample>(&s, 1));

    const std::size_t H = 2;
    std::vector<std::vector<double>> x;
    for (std::size_t day = 1; day < 3; ++day) {
        const auto r = toy.store.news_row(day, 1);
        x.emplace_back(r.begin(), r.end());
    }
    std::vector<std::vector<double>> fwd, bwd(2);
    std::vector<double> h(H, 0.0), c(H, 0.0);
    for (std::size_t p = 0; p < 2; ++p) {
        lstm_step(params.at("lstm.fwd.W").value, params.at("lstm.fwd.b").value, x[p], h, c);
        fwd.push_back(h);
    }
    std::fill(h.begin(), h.end(), 0.0);
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t p = 2; p-- > 0;) {
        lstm_step(params.at("lstm.bwd.W").value, params.at("lstm.bwd.b").value, x[p], h, c);
        bwd[p] = h;
    }
    std::vector<std::vector<double>> v;
    for (std::size_t p = 0; p < 2; ++p) {
        v.push_back(fwd[p]);
        v.back().insert(v.back().end(), bwd[p].begin(), bwd[p].end());
    }
    const auto& W = params.at("tattn.W").value;
    const auto& b = params.at("tattn.b").value;
    const auto& u = params.at("tattn.u").value;
    std::vector<double> score(2, 0.0);
    for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t j = 0; j < W.rows(); ++j) {
            double a = b(0, j);
            for (std::size_t k = 0; k < 2 * H; ++k) a += W(j, k) * v[p][k];
            score[p] += u(0, j) * std::tanh(a);
        }
    }
    const auto beta = softmax(score);
    double yhat = params.at("head.b").value(0, 0);
    for (std::size_t k = 0; k < 2 * H; ++k) {
        yhat += params.at("head.W").value(0, k) * (beta[0] * v[0][k] + beta[1] * v[1][k]);
    }
    ASSERT_EQ(got.size(), 1u);
    EXPECT_NEAR(got[0].yhat, yhat, 1e-14);
    EXPECT_NEAR(got[0].beta[0], beta[0], 1e-14);
}

TEST(Ridge, SingleFeatureExactFit) {
    Design X{3, 1, {1.0, 2.0, 3.0}};
    const std::vector<double> y{2.0, 4.0, 6.0};
    const auto m = ridge_fit(X, y, 0.0);
    EXPECT_NEAR(m.coef[0], 2.0, 1e-12);
    EXPECT_NEAR(m.intercept, 0.0, 1e-12);
    const auto p = ridge_predict(m, X);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p[i], y[i], 1e-12);
}

TEST(Ridge, LargePenaltyShrinksToZero) {
    const auto Xt = random_tensor(10, 3, 50);
    Design X{10, 3, vec(Xt.values())};
    const auto yt = random_tensor(10, 1, 51);
    const auto m = ridge_fit(X, yt.values(), 1e9);
    double norm = 0.0;
    for (double c : m.coef) norm += c * c;
    EXPECT_LE(std::sqrt(norm), 1e-6);
}

TEST(Ridge, MatchesExplicitNormalEquations) {
    const auto Xt = random_tensor(10, 3, 52);
    const auto yt = random_tensor(10, 1, 53);
    const double lambda = 0.3;
    const auto m = ridge_fit(Design{10, 3, vec(Xt.values())}, yt.values(), lambda);

    Eigen::MatrixXd A(10, 3);
    Eigen::VectorXd y(10);
    for (std::size_t r = 0; r < 10; ++r) {
        y(r) = yt(r, 0);
        for (std::size_t c = 0; c < 3; ++c) A(r, c) = Xt(r, c);
    }
    const Eigen::RowVectorXd mean = A.colwise().mean();
    const Eigen::MatrixXd Ac = A.rowwise() - mean;
    const Eigen::VectorXd yc = y.array() - y.mean();
    const Eigen::VectorXd beta =
        (Ac.transpose() * Ac + lambda * Eigen::MatrixXd::Identity(3, 3)).inverse() * (Ac.transpose() * yc);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(m.coef[c], beta(c), 1e-8);
    EXPECT_NEAR(m.intercept, y.mean() - mean.dot(beta), 1e-8);
}

TEST(Ridge, SingularWithoutPenalty) {
    Design X{4, 2, {1, 1, 2, 2, 3, 3, 4, 4}};
    const std::vector<double> y{1, 2, 3, 4};
    try {
        ridge_fit(X, y, 0.0);
        FAIL() << "expected TrainingError";
    } catch (const TrainingError& e) {
        EXPECT_NE(std::string(e.what()).find("lambda"), std::string::npos) << e.what();
    }
}

TEST(Ridge, GridAndSelection) {
    const auto grid = default_ridge_grid();
    ASSERT_EQ(grid.size(), 7u);
    EXPECT_DOUBLE_EQ(grid.front(), 1e-5);
    EXPECT_DOUBLE_EQ(grid.back(), 10.0);
    const auto Xt = random_tensor(40, 3, 54), Xv = random_tensor(20, 3, 55);
    std::vector<double> yt, yv;
    for (std::size_t r = 0; r < 40; ++r) yt.push_back(Xt(r, 0) - 2.0 * Xt(r, 2));
    for (std::size_t r = 0; r < 20; ++r) yv.push_back(Xv(r, 0) - 2.0 * Xv(r, 2));
    const auto sel = select_ridge(Design{40, 3, vec(Xt.values())}, yt, Design{20, 3, vec(Xv.values())}, yv, grid);
    EXPECT_DOUBLE_EQ(sel.model.lambda, 1e-5);
    EXPECT_EQ(sel.validation_mse.size(), grid.size());
}
