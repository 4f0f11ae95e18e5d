#include "cli/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "alphafuse/backtest/forecast_panel.hpp"
#include "alphafuse/backtest/forecast_stats.hpp"
#include "alphafuse/backtest/longshort.hpp"
#include "alphafuse/backtest/markowitz.hpp"
#include "alphafuse/backtest/metrics.hpp"
#include "alphafuse/backtest/quantiles.hpp"
#include "alphafuse/backtest/split.hpp"
#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/embedding_io.hpp"
#include "alphafuse/common/errors.hpp"
#include "alphafuse/interpret/attention_summary.hpp"
#include "alphafuse/interpret/distances.hpp"
#include "alphafuse/interpret/importance.hpp"
#include "alphafuse/interpret/news_buckets.hpp"
#include "alphafuse/market/bars.hpp"
#include "alphafuse/market/factors.hpp"
#include "alphafuse/market/returns.hpp"
#include "alphafuse/market/universe.hpp"
#include "alphafuse/model/config.hpp"
#include "alphafuse/model/dataset.hpp"
#include "alphafuse/model/ridge.hpp"
#include "alphafuse/model/trainer.hpp"
#include "alphafuse/nn/checkpoint.hpp"
#include "alphafuse/stock2vec/glove.hpp"
#include "alphafuse/stock2vec/knn_graph.hpp"
#include "alphafuse/synth/generator.hpp"
#include "alphafuse/text/cbow.hpp"
#include "alphafuse/text/cooccurrence.hpp"
#include "alphafuse/text/news.hpp"
#include "cli/manifest.hpp"

namespace alphafuse::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Run {
    const RunConfig& cfg;
    std::string out;
    Manifest& manifest;

    std::string at(const std::string& name) const { return out + "/" + name; }
    std::string in(const std::string& name) const {
        const std::string p = at(name);
        if (!std::filesystem::exists(p)) throw IoError("missing input '" + p + "'; run the earlier pipeline stage first");
        manifest.input(p);
        return p;
    }
    std::string produce(const std::string& name) const { return manifest.output(at(name)); }
    std::string bars_path() const {
        std::string p = cfg.str("paths", "bars");
        if (p.empty()) p = at("bars.csv");
        manifest.input(p);
        return p;
    }
    std::string news_path() const {
        std::string p = cfg.str("paths", "news");
        if (p.empty()) p = at("news.jsonl");
        manifest.input(p);
        return p;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << text;
    if (!f) throw IoError("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

void write_loss_csv(const std::string& path, const std::vector<double>& loss) {
    std::ostringstream ss;
    ss << "epoch,loss\n";
    for (std::size_t i = 0; i < loss.size(); ++i) ss << i << ',' << csv::format_double(loss[i]) << '\n';
    write_text(path, ss.str());
}

std::vector<std::string> read_universe(const std::string& path) {
    std::vector<std::string> out;
    for (auto& line : csv::read_lines(path)) {
        if (!line.empty()) out.push_back(line);
    }
    if (out.empty()) throw EmptyInputError("universe file '" + path + "' lists no symbols");
    return out;
}

backtest::SplitSpec resolve_split(const std::vector<Date>& calendar, const RunConfig& cfg) {
    if (calendar.empty()) throw EmptyInputError("no trading days in bars");
    const std::string end = cfg.str("split", "train_end");
    Date train_end;
    if (!end.empty()) {
        const Date want = Date::parse(end);
        auto it = std::upper_bound(calendar.begin(), calendar.end(), want);
        if (it == calendar.begin()) throw ValidationError("split.train_end " + end + " precedes the calendar");
        train_end = *(it - 1);
    } else {
        const double frac = cfg.num("split", "train_fraction");
        if (!(frac > 0.0 && frac < 1.0)) throw ConfigError("split.train_fraction must lie in (0, 1)");
        const auto n = static_cast<std::size_t>(std::floor(frac * static_cast<double>(calendar.size())));
        train_end = calendar[std::max<std::size_t>(n, 1) - 1];
    }
    return backtest::make_split(calendar, train_end, cfg.count("split", "gap_days"));
}

struct Market {
    market::BarPanel bars;
    std::vector<std::string> symbols;
    backtest::SplitSpec split;
};

Market load_market(const Run& run) {
    Market m;
    const auto all = market::load_bars(run.bars_path());
    m.symbols = read_universe(run.in("universe.txt"));
    m.bars = all.select_symbols(m.symbols);
    m.split = resolve_split(m.bars.calendar(), run.cfg);
    return m;
}

text::PreprocessOptions preprocess_options() { return {}; }

std::vector<text::NewsArticle> training_news(const std::vector<text::NewsArticle>& articles, Date train_end) {
    std::vector<text::NewsArticle> out;
    for (const auto& a : articles) {
        if (a.date < train_end) out.push_back(a);
    }
    return out;
}

ojson model_config_json(const model::ModelConfig& c, const std::string& ablation) {
    ojson j;
    j["ablation"] = ablation;
    j["T"] = c.T;
    j["d"] = c.d;
    j["k"] = c.k;
    j["l"] = c.l;
    j["m"] = c.m;
    j["d_w"] = c.d_w;
    j["hidden"] = c.hidden;
    j["attn_hidden"] = c.attn_hidden;
    j["temporal_hidden"] = c.temporal_hidden;
    j["modules"] = {{"graph", c.modules.graph}, {"tech", c.modules.tech}, {"news", c.modules.news}};
    j["head"] = model::to_string(c.head);
    j["head_outputs"] = c.head_outputs;
    j["horizon"] = c.horizon;
    j["epochs"] = c.epochs;
    j["lr"] = c.lr;
    j["batch_size"] = c.batch_size;
    j["patience"] = c.patience;
    j["validation_fraction"] = c.validation_fraction;
    j["validation"] = model::to_string(c.validation);
    j["nonneg_tech"] = c.nonneg_tech;
    j["fine_tune_embeddings"] = c.fine_tune_embeddings;
    j["seed"] = c.seed;
    return j;
}

model::ModelConfig model_config_from_json(const nlohmann::json& j) {
    try {
        model::ModelConfig c;
        c.T = j.at("T");
        c.d = j.at("d");
        c.k = j.at("k");
        c.l = j.at("l");
        c.m = j.at("m");
        c.d_w = j.at("d_w");
        c.hidden = j.at("hidden");
        c.attn_hidden = j.at("attn_hidden");
        c.temporal_hidden = j.at("temporal_hidden");
        c.modules.graph = j.at("modules").at("graph");
        c.modules.tech = j.at("modules").at("tech");
        c.modules.news = j.at("modules").at("news");
        c.head = model::parse_head_mode(j.at("head"));
        c.head_outputs = j.at("head_outputs");
        c.horizon = j.at("horizon");
        c.epochs = j.at("epochs");
        c.lr = j.at("lr");
        c.batch_size = j.at("batch_size");
        c.patience = j.at("patience");
        c.validation_fraction = j.at("validation_fraction");
        c.validation = model::parse_validation_mode(j.at("validation"));
        c.nonneg_tech = j.at("nonneg_tech");
        c.fine_tune_embeddings = j.at("fine_tune_embeddings");
        c.seed = j.at("seed");
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model.json: ") + e.what(), 0);
    }
}

model::ModelConfig model_config_from_run(const RunConfig& cfg, std::size_t num_factors) {
    model::ModelConfig base;
    base.T = cfg.count("model", "T");
    base.d = cfg.count("glove", "dim");
    base.k = cfg.count("graph", "k");
    base.m = cfg.count("model", "m");
    base.d_w = cfg.count("text", "dim");
    base.hidden = cfg.count("model", "hidden");
    base.attn_hidden = cfg.count("model", "attn_hidden");
    base.temporal_hidden = cfg.count("model", "temporal_hidden");
    base.head = model::parse_head_mode(cfg.str("model", "head"));
    base.horizon = cfg.count("model", "horizon");
    base.epochs = cfg.count("model", "epochs");
    base.lr = cfg.num("model", "lr");
    base.batch_size = cfg.count("model", "batch_size");
    base.patience = cfg.count("model", "patience");
    base.validation_fraction = cfg.num("model", "validation_fraction");
    base.validation = model::parse_validation_mode(cfg.str("model", "validation"));
    base.nonneg_tech = cfg.flag("model", "nonneg_tech");
    base.seed = cfg.seed();
    auto c = model::ablation_config(cfg.str("model", "ablation"), base);
    c.l = num_factors;
    c.validate();
    return c;
}

// Everything the model-facing commands share: the feature store and optional graph inputs.
struct ModelInputs {
    Market market;
    market::FactorPanel factors;
    std::optional<text::DailyNewsPanel> news;
    std::optional<stock2vec::StockEmbeddingSet> embeddings;
    std::optional<stock2vec::StockGraph> graph;
    model::FeatureStore store;
};

ModelInputs load_model_inputs(const Run& run, const model::ModelConfig& mc) {
    ModelInputs in;
    in.market = load_market(run);
    in.factors = market::read_factor_csv(run.in("factors.csv"));
    if (in.factors.symbols() != in.market.symbols) {
        throw ValidationError("factors.csv symbols do not match universe.txt");
    }
    if (mc.modules.news) {
        const auto articles = text::load_news(run.news_path(), preprocess_options());
        const auto words = text::WordEmbeddingSet::from_table(read_embedding_table(run.in("words.vec")));
        in.news = text::daily_stock_news_vectors(articles, words, in.market.symbols, in.market.bars.calendar());
    }
    if (mc.modules.graph) {
        in.embeddings = stock2vec::StockEmbeddingSet::from_table(read_embedding_table(run.in("stocks.vec")));
        if (in.embeddings->symbols != in.market.symbols) {
            throw ValidationError("stocks.vec symbols do not match universe.txt");
        }
        in.graph = stock2vec::read_graph_csv(run.in("graph.csv"), in.market.symbols);
        if (in.graph->k != mc.k) throw ConfigError("graph.csv has k=" + std::to_string(in.graph->k) +
                                                   " but the model expects k=" + std::to_string(mc.k));
    }
    in.store = model::build_feature_store(in.market.bars, &in.factors, in.news ? &*in.news : nullptr,
                                          in.market.symbols, mc.horizon);
    return in;
}

model::SampleWindow train_window(const model::ModelConfig& mc, const backtest::SplitSpec& split) {
    model::SampleWindow w;
    w.first_anchor = mc.T;
    w.last_anchor = split.train_end_index;
    w.last_label_day = split.train_end_index;
    w.require_label = true;
    return w;
}

model::SampleWindow test_window(const backtest::SplitSpec& split) {
    model::SampleWindow w;
    w.first_anchor = split.test_start_index;
    w.last_anchor = split.test_end_index;
    w.require_label = false;
    return w;
}

std::vector<double> labels_of(std::span<const model::Sample> samples) {
    std::vector<double> y;
    y.reserve(samples.size());
    for (const auto& s : samples) y.push_back(s.label);
    return y;
}

ojson ridge_json(const model::RidgeSelection& sel, bool tech, bool news) {
    ojson j;
    j["lambda"] = sel.model.lambda;
    j["intercept"] = sel.model.intercept;
    j["tech"] = tech;
    j["news"] = news;
    j["coef"] = sel.model.coef;
    ojson mse = ojson::array();
    for (const auto& [lambda, v] : sel.validation_mse) mse.push_back({{"lambda", lambda}, {"mse", v}});
    j["validation_mse"] = mse;
    return j;
}

// ---------------------------------------------------------------- commands

void cmd_synth(const Run& run) {
    synth::SyntheticSpec spec;
    const auto& c = run.cfg;
    spec.n_stocks = c.count("synth", "n_stocks");
    spec.days = c.count("synth", "days");
    spec.clusters = c.count("synth", "clusters");
    spec.noise_std = c.num("synth", "noise_std");
    spec.cluster_loading = c.num("synth", "cluster_loading");
    spec.news_rate = c.num("synth", "news_rate");
    spec.fidelity = c.num("synth", "fidelity");
    spec.max_comentions = c.count("synth", "max_comentions");
    spec.words_per_article = c.count("synth", "words_per_article");
    spec.factors[0].beta = c.num("synth", "momentum_beta");
    spec.factors[1].beta = c.num("synth", "volatility_beta");
    spec.seed = c.seed();
    spec.validate();
    for (const char* f : {"bars.csv", "news.jsonl", "truth.json", "truth_signal.csv"}) run.produce(f);
    const auto data = synth::generate_synthetic(spec);
    synth::write_synthetic(run.out, data, spec);
    run.manifest.notes()["articles"] = data.news.size();
    run.manifest.notes()["trading_days"] = data.bars.num_dates();
}

void cmd_ingest(const Run& run) {
    const auto bars = market::load_bars(run.bars_path());
    if (bars.empty()) throw EmptyInputError("bars file has no rows");
    const auto split = resolve_split(bars.calendar(), run.cfg);

    market::UniverseFilter filter;
    filter.min_median_dollar_volume = run.cfg.num("universe", "min_median_dollar_volume");
    filter.min_price = run.cfg.num("universe", "min_price");
    filter.min_history = run.cfg.count("universe", "min_history");
    const auto universe = market::filter_universe(bars, filter, bars.calendar().front(), split.train_end);
    if (universe.empty()) throw EmptyInputError("no symbol passes the universe filter");

    const std::string factor_path = run.cfg.str("paths", "factors");
    market::FactorRegistry registry = market::FactorRegistry::defaults();
    if (!factor_path.empty()) {
        run.manifest.input(factor_path);
        registry = market::FactorRegistry::load(factor_path);
    }
    const auto panel = bars.select_symbols(universe);
    const auto factors = market::compute_factors(panel, registry);

    // news is checked for parse errors here so later stages fail early
    const std::string news = run.news_path();
    std::size_t articles = 0;
    if (std::filesystem::exists(news)) articles = text::load_news(news, preprocess_options()).size();

    std::ostringstream u;
    for (const auto& s : universe) u << s << '\n';
    write_text(run.produce("universe.txt"), u.str());
    market::write_factor_csv(run.produce("factors.csv"), factors);
    write_text(run.produce("factor_registry.json"), registry.to_json_text());
    ojson sj;
    sj["train_end"] = split.train_end.to_string();
    sj["gap_days"] = split.gap_days;
    sj["test_start"] = split.test_start.to_string();
    sj["test_end"] = split.test_end.to_string();
    sj["train_end_index"] = split.train_end_index;
    sj["test_start_index"] = split.test_start_index;
    sj["test_end_index"] = split.test_end_index;
    write_text(run.produce("split.json"), sj.dump(2) + "\n");
    run.manifest.notes()["universe_size"] = universe.size();
    run.manifest.notes()["dropped_symbols"] = bars.num_symbols() - universe.size();
    run.manifest.notes()["articles"] = articles;
}

void cmd_cooccur(const Run& run) {
    const auto m = load_market(run);
    const auto articles = text::load_news(run.news_path(), preprocess_options());
    const auto X = text::build_cooccurrence(training_news(articles, m.split.train_end), m.symbols);
    text::write_cooccurrence_csv(run.produce("cooccurrence.csv"), X);
    run.manifest.notes()["nonzero_pairs"] = X.nonzero_pairs();
}

void cmd_train_word2vec(const Run& run) {
    const auto m = load_market(run);
    const auto articles = training_news(text::load_news(run.news_path(), preprocess_options()), m.split.train_end);
    const auto corpus = text::token_corpus(articles);
    const auto vocab = text::Vocabulary::build(corpus, run.cfg.count("text", "min_count"));
    if (vocab.empty()) throw EmptyInputError("no word reaches text.min_count in the training news");
    text::CbowConfig c;
    c.dim = run.cfg.count("text", "dim");
    c.window = run.cfg.count("text", "window");
    c.negatives = run.cfg.count("text", "negatives");
    c.epochs = run.cfg.count("text", "epochs");
    c.lr = run.cfg.num("text", "lr");
    c.seed = run.cfg.seed();
    const auto result = text::train_cbow(corpus, vocab, c);
    write_embedding_table(run.produce("words.vec"), result.embeddings.to_table());
    write_loss_csv(run.produce("word2vec_loss.csv"), result.epoch_loss);
    run.manifest.trace("word2vec", result.epoch_loss);
    run.manifest.notes()["vocabulary"] = vocab.size();
    run.manifest.notes()["training_articles"] = articles.size();
}

void cmd_train_glove(const Run& run) {
    const auto symbols = read_universe(run.in("universe.txt"));
    const auto X = text::read_cooccurrence_csv(run.in("cooccurrence.csv"), symbols);
    stock2vec::GloveConfig c;
    c.dim = run.cfg.count("glove", "dim");
    c.x_max = run.cfg.num("glove", "x_max");
    c.alpha = run.cfg.num("glove", "alpha");
    c.epochs = run.cfg.count("glove", "epochs");
    c.lr = run.cfg.num("glove", "lr");
    c.seed = run.cfg.seed();
    const auto result = stock2vec::train_glove(X, c);
    write_embedding_table(run.produce("stocks.vec"), result.embeddings.to_table());
    write_loss_csv(run.produce("glove_loss.csv"), result.loss_trace);
    run.manifest.trace("glove", result.loss_trace);
}

void cmd_graph(const Run& run) {
    const auto emb = stock2vec::StockEmbeddingSet::from_table(read_embedding_table(run.in("stocks.vec")));
    const auto graph = stock2vec::build_knn_graph(emb, run.cfg.count("graph", "k"));
    stock2vec::write_graph_csv(run.produce("graph.csv"), graph, emb.symbols);
}

void cmd_train(const Run& run) {
    const auto factor_names = market::read_factor_csv(run.in("factors.csv")).factor_names();
    const auto mc = model_config_from_run(run.cfg, factor_names.size());
    const auto in = load_model_inputs(run, mc);
    const auto set = model::make_samples(in.store, mc, train_window(mc, in.market.split));
    if (set.samples.empty()) throw EmptyInputError("no training samples in the training window");

    const auto result = model::train(in.store, set.samples, mc, in.embeddings ? &*in.embeddings : nullptr,
                                     in.graph ? &*in.graph : nullptr);

    nn::save_checkpoint(run.produce("model.ckpt"), result.params);
    ojson mj = model_config_json(mc, run.cfg.str("model", "ablation"));
    mj["factor_names"] = factor_names;
    mj["best_epoch"] = result.best_epoch;
    mj["training_samples"] = set.samples.size();
    mj["validation_samples"] = result.validation_samples;
    write_text(run.produce("model.json"), mj.dump(2) + "\n");
    std::ostringstream loss;
    loss << "epoch,train_loss,val_loss\n";
    for (std::size_t e = 0; e < result.train_loss.size(); ++e) {
        loss << e + 1 << ',' << csv::format_double(result.train_loss[e]) << ',';
        if (e < result.val_loss.size()) loss << csv::format_double(result.val_loss[e]);
        loss << '\n';
    }
    write_text(run.produce("train_loss.csv"), loss.str());
    run.manifest.trace("train", result.train_loss);
    run.manifest.trace("validation", result.val_loss);

    // ridge baseline on the concatenated daily feature vectors of the same window
    const bool tech = mc.modules.tech;
    const bool news = mc.modules.news;
    if (tech || news) {
        const std::vector<model::Sample>& all = set.samples;
        std::vector<model::Sample> ordered = all;
        std::stable_sort(ordered.begin(), ordered.end(),
                         [](const auto& a, const auto& b) { return a.anchor < b.anchor; });
        const std::size_t cut = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor((1.0 - mc.validation_fraction) * static_cast<double>(ordered.size()))));
        std::span<const model::Sample> fit(ordered.data(), std::min(cut, ordered.size()));
        std::span<const model::Sample> val(ordered.data() + fit.size(), ordered.size() - fit.size());
        auto sel = [&] {
            if (val.empty()) {
                model::RidgeSelection s;
                s.model = model::ridge_fit(model::ridge_design(in.store, fit, mc.T, tech, news), labels_of(fit), 1.0);
                return s;
            }
            return model::select_ridge(model::ridge_design(in.store, fit, mc.T, tech, news), labels_of(fit),
                                       model::ridge_design(in.store, val, mc.T, tech, news), labels_of(val),
                                       model::default_ridge_grid());
        }();
        sel.model = model::ridge_fit(model::ridge_design(in.store, ordered, mc.T, tech, news), labels_of(ordered),
                                     sel.model.lambda);
        write_text(run.produce("ridge.json"), ridge_json(sel, tech, news).dump(2) + "\n");
        run.manifest.notes()["ridge_lambda"] = sel.model.lambda;
    }
    run.manifest.notes()["missing_features"] = set.missing_features;
    run.manifest.notes()["missing_label"] = set.missing_label;
}

struct LoadedModel {
    model::ModelConfig config;
    nlohmann::json json;
    nn::ParameterSet params;
};

LoadedModel load_model(const Run& run) {
    LoadedModel m;
    m.json = read_json(run.in("model.json"));
    m.config = model_config_from_json(m.json);
    m.params = nn::load_checkpoint(run.in("model.ckpt"));
    return m;
}

void cmd_predict(const Run& run) {
    const auto lm = load_model(run);
    const auto& mc = lm.config;
    const auto in = load_model_inputs(run, mc);
    const auto& cal = in.store.calendar;
    const auto train_set = model::make_samples(in.store, mc, train_window(mc, in.market.split));
    const auto test_set = model::make_samples(in.store, mc, test_window(in.market.split));
    if (test_set.samples.empty()) throw EmptyInputError("no test samples after the split");

    std::vector<backtest::ForecastRow> rows;
    auto emit = [&](const std::vector<model::Sample>& samples, const std::string& set) {
        const auto fc = model::predict(lm.params, mc, in.graph ? &*in.graph : nullptr, in.store, samples);
        for (const auto& f : fc) rows.push_back({cal[f.anchor], in.store.symbols[f.stock], f.yhat, f.label, set});
    };
    emit(train_set.samples, "train");
    emit(test_set.samples, "test");
    backtest::write_forecasts_csv(run.produce("forecasts.csv"), rows);

    const std::string ridge_path = run.at("ridge.json");
    if (std::filesystem::exists(ridge_path)) {
        run.manifest.input(ridge_path);
        const auto rj = read_json(ridge_path);
        model::RidgeModel rm;
        rm.lambda = rj.at("lambda");
        rm.intercept = rj.at("intercept");
        rm.coef = rj.at("coef").get<std::vector<double>>();
        const bool tech = rj.at("tech");
        const bool news = rj.at("news");
        std::vector<backtest::ForecastRow> rrows;
        auto emit_ridge = [&](const std::vector<model::Sample>& samples, const std::string& set) {
            const auto yhat = model::ridge_predict(rm, model::ridge_design(in.store, samples, mc.T, tech, news));
            for (std::size_t i = 0; i < samples.size(); ++i) {
                rrows.push_back({cal[samples[i].anchor], in.store.symbols[samples[i].stock], yhat[i], samples[i].label,
                                 set});
            }
        };
        emit_ridge(train_set.samples, "train");
        emit_ridge(test_set.samples, "test");
        backtest::write_forecasts_csv(run.produce("forecasts_ridge.csv"), rrows);
    }
    run.manifest.notes()["train_rows"] = train_set.samples.size();
    run.manifest.notes()["test_rows"] = test_set.samples.size();
}

std::optional<double> r2_of(const std::vector<backtest::ForecastRow>& rows, const std::string& set) {
    std::vector<double> y, yhat;
    for (const auto& r : rows) {
        if (r.set == set && !std::isnan(r.y)) {
            y.push_back(r.y);
            yhat.push_back(r.yhat);
        }
    }
    return backtest::r_squared(y, yhat);
}

// Forecast grid over the full calendar with only test rows filled, and the universe's daily returns.
struct BacktestInputs {
    Market market;
    std::vector<backtest::ForecastRow> rows;
    backtest::ForecastPanel full;
    backtest::ForecastPanel test;
};

backtest::ForecastPanel slice(const backtest::ForecastPanel& p, std::size_t first, std::size_t last) {
    std::vector<Date> dates(p.dates().begin() + static_cast<std::ptrdiff_t>(first),
                            p.dates().begin() + static_cast<std::ptrdiff_t>(last) + 1);
    backtest::ForecastPanel out(dates, p.symbols());
    const std::size_t N = p.num_symbols();
    for (std::size_t d = first; d <= last; ++d) {
        for (std::size_t s = 0; s < N; ++s) {
            out.yhat.at(d - first, s) = p.yhat.at(d, s);
            out.y.at(d - first, s) = p.y.at(d, s);
        }
    }
    return out;
}

BacktestInputs load_backtest_inputs(const Run& run) {
    BacktestInputs b;
    b.market = load_market(run);
    b.rows = backtest::read_forecasts_csv(run.in("forecasts.csv"));
    b.full = backtest::to_panel(b.rows, b.market.bars.calendar(), b.market.symbols, "test");
    b.test = slice(b.full, b.market.split.test_start_index, b.market.split.test_end_index);
    return b;
}

void cmd_backtest(const Run& run) {
    const auto b = load_backtest_inputs(run);
    const auto returns = market::daily_open_returns(b.market.bars);
    const std::string sim = run.cfg.str("backtest", "simulator");
    backtest::TradeLedger ledger;
    double scale = 1.0;
    if (sim == "longshort") {
        ledger = backtest::simulate_longshort(b.full.yhat, returns, run.cfg.count("backtest", "holding_days"));
    } else if (sim == "markowitz") {
        backtest::MarkowitzConfig mc;
        mc.risk_aversion = run.cfg.num("backtest", "risk_aversion");
        mc.halflife = run.cfg.num("backtest", "halflife");
        mc.shrinkage = run.cfg.num("backtest", "shrinkage");
        mc.min_history = run.cfg.count("backtest", "min_history");
        mc.c_lin = run.cfg.num("backtest", "c_lin");
        mc.c_quad = run.cfg.num("backtest", "c_quad");
        mc.name_cap = run.cfg.num("backtest", "name_cap");
        mc.gross_cap = run.cfg.num("backtest", "gross_cap");
        mc.hedge = run.cfg.flag("backtest", "hedge");
        mc.capital = run.cfg.num("backtest", "capital");
        ledger = backtest::simulate_markowitz(b.full.yhat, returns, mc);
        scale = mc.capital;
    } else {
        throw ConfigError("backtest.simulator must be 'longshort' or 'markowitz', got '" + sim + "'");
    }

    // report the test period only; earlier days carry no positions
    const std::size_t first = b.market.split.test_start_index;
    const std::size_t last = b.market.split.test_end_index;
    backtest::TradeLedger report;
    double cum = 0.0;
    for (std::size_t d = first; d <= last && d < ledger.dates.size(); ++d) {
        report.dates.push_back(ledger.dates[d]);
        report.positions.push_back(ledger.positions[d]);
        report.hedge.push_back(ledger.hedge[d]);
        report.pnl.push_back(ledger.pnl[d]);
        cum += ledger.pnl[d];
        report.cum_pnl.push_back(cum);
        report.turnover.push_back(ledger.turnover[d]);
        report.costs.push_back(ledger.costs[d]);
        const auto& w = ledger.positions[d];
        if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) ++report.flat_days;
    }
    backtest::write_pnl_csv(run.produce("pnl_daily.csv"), report);

    std::vector<double> per_dollar;
    for (double p : report.pnl) per_dollar.push_back(p / scale);
    const auto stats = backtest::forecast_stats(b.test);
    std::vector<double> corr, sd;
    for (const auto& c : stats.daily_correlation) {
        if (c) corr.push_back(*c);
    }
    for (const auto& s : stats.daily_std) {
        if (s) sd.push_back(*s);
    }
    const auto paper = backtest::paper_pnl(b.test);
    double paper_total = 0.0;
    for (double v : paper) paper_total += v;
    double costs = 0.0;
    for (double c : report.costs) costs += c;

    std::vector<std::pair<std::string, std::optional<double>>> metrics;
    metrics.emplace_back("r2_train", r2_of(b.rows, "train"));
    metrics.emplace_back("r2_test", r2_of(b.rows, "test"));
    const std::string ridge_path = run.at("forecasts_ridge.csv");
    if (std::filesystem::exists(ridge_path)) {
        run.manifest.input(ridge_path);
        metrics.emplace_back("ridge_r2_test", r2_of(backtest::read_forecasts_csv(ridge_path), "test"));
    }
    metrics.emplace_back("sharpe", backtest::sharpe(per_dollar));
    metrics.emplace_back("total_pnl", report.total_pnl());
    metrics.emplace_back("total_turnover", report.total_turnover());
    metrics.emplace_back("total_costs", costs);
    metrics.emplace_back("paper_pnl", paper_total);
    metrics.emplace_back("mean_daily_correlation",
                         corr.empty() ? std::nullopt : std::optional<double>(backtest::mean(corr)));
    metrics.emplace_back("mean_forecast_std", sd.empty() ? std::nullopt : std::optional<double>(backtest::mean(sd)));
    metrics.emplace_back("degenerate_days", static_cast<double>(stats.degenerate_days));
    metrics.emplace_back("flat_days", static_cast<double>(report.flat_days));
    metrics.emplace_back("test_days", static_cast<double>(report.dates.size()));
    backtest::write_metrics_csv(run.produce("metrics.csv"), metrics);
    backtest::write_forecast_stats_csv(run.produce("forecast_stats.csv"), b.test, stats);
    run.manifest.notes()["simulator"] = sim;
}

void cmd_quantiles(const Run& run) {
    const auto b = load_backtest_inputs(run);
    const auto both = backtest::quantile_analysis(b.test, {1, 2, 3, 4}, backtest::Side::Both);
    backtest::write_quantiles_csv(run.produce("quantiles.csv"), both);
    backtest::write_quantiles_csv(run.produce("quantiles_long.csv"),
                                  backtest::quantile_analysis(b.test, {1, 2, 3, 4}, backtest::Side::Long));
    backtest::write_quantiles_csv(run.produce("quantiles_short.csv"),
                                  backtest::quantile_analysis(b.test, {1, 2, 3, 4}, backtest::Side::Short));
    std::ostringstream ss;
    ss << "date";
    for (const auto& q : both) ss << ",qr" << q.qr;
    ss << '\n';
    for (std::size_t d = 0; d < b.test.num_dates(); ++d) {
        ss << b.test.dates()[d].to_string();
        for (const auto& q : both) ss << ',' << csv::format_double(q.cum_pnl[d]);
        ss << '\n';
    }
    write_text(run.produce("quantile_pnl.csv"), ss.str());
}

void cmd_interpret(const Run& run) {
    const auto lm = load_model(run);
    const auto& mc = lm.config;
    const auto in = load_model_inputs(run, mc);
    const auto& symbols = in.market.symbols;

    // embeddings after fine-tuning when the graph module was trained, else the pre-trained ones
    EmbeddingTable table;
    if (mc.modules.graph) {
        const auto& E = lm.params.at("stock.E").value;
        table.labels = symbols;
        table.dim = E.cols();
        table.values.assign(E.values().begin(), E.values().end());
        interpret::export_embeddings(run.produce("stocks_final.vec"), table);
    } else {
        table = read_embedding_table(run.in("stocks.vec"));
        run.manifest.notes()["embeddings"] = "pretrained";
    }
    const auto report = interpret::pairwise_distance_report(table);
    interpret::write_distance_csv(run.produce("distances.csv"), report, table.labels);
    const auto ext = interpret::extreme_pairs(report, run.cfg.num("interpret", "distance_band"));
    std::vector<interpret::DistancePair> extremes = ext.closest;
    extremes.insert(extremes.end(), ext.farthest.begin(), ext.farthest.end());
    interpret::write_distance_csv(run.produce("distance_extremes.csv"), extremes, table.labels);

    if (mc.modules.tech) {
        const auto& W = lm.params.at("tech.W").value;
        std::size_t k_emb = run.cfg.count("interpret", "k_emb");
        if (k_emb >= W.cols()) {
            run.manifest.notes()["k_emb_clamped_from"] = k_emb;
            k_emb = W.cols() > 1 ? W.cols() - 1 : 1;
        }
        const auto freq = interpret::factor_frequency(W, k_emb);
        interpret::write_importance_csv(run.produce("factor_importance.csv"), freq,
                                        lm.json.at("factor_names").get<std::vector<std::string>>());
        run.manifest.notes()["nonneg_tech"] = mc.nonneg_tech;
    }

    const auto test_set = model::make_samples(in.store, mc, test_window(in.market.split));
    const auto fc = model::predict(lm.params, mc, in.graph ? &*in.graph : nullptr, in.store, test_set.samples);
    std::vector<std::vector<double>> betas;
    betas.reserve(fc.size());
    for (const auto& f : fc) betas.push_back(f.beta);
    interpret::write_attention_csv(run.produce("attention.csv"), interpret::aggregate_temporal_attention(betas));

    std::vector<std::size_t> labelled;
    std::vector<double> err;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        if (!std::isnan(fc[i].label)) {
            labelled.push_back(i);
            err.push_back((fc[i].yhat - fc[i].label) * (fc[i].yhat - fc[i].label));
        }
    }
    const auto buckets = interpret::news_error_buckets(err, run.cfg.num("interpret", "error_tail"));
    std::ostringstream ss;
    ss << "bucket,rank,date,symbol,squared_error,articles\n";
    auto dump = [&](const std::vector<std::size_t>& idx, const char* name) {
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const auto& f = fc[labelled[idx[r]]];
            std::string ids;
            if (in.news) {
                for (std::size_t lag = 1; lag <= mc.T && lag <= f.anchor; ++lag) {
                    for (const auto& id : in.news->article_ids(f.anchor - lag, f.stock)) {
                        if (!ids.empty()) ids += ';';
                        ids += id;
                    }
                }
            }
            ss << name << ',' << r + 1 << ',' << in.store.calendar[f.anchor].to_string() << ','
               << symbols[f.stock] << ',' << csv::format_double(err[idx[r]]) << ',' << ids << '\n';
        }
    };
    dump(buckets.low, "low");
    dump(buckets.high, "high");
    write_text(run.produce("news_buckets.csv"), ss.str());
    run.manifest.notes()["news_buckets_degenerate"] = buckets.degenerate;
}

const std::map<std::string, std::function<void(const Run&)>>& registry() {
    static const std::map<std::string, std::function<void(const Run&)>> r = {
        {"synth", cmd_synth},
        {"ingest", cmd_ingest},
        {"cooccur", cmd_cooccur},
        {"train-word2vec", cmd_train_word2vec},
        {"train-glove", cmd_train_glove},
        {"graph", cmd_graph},
        {"train", cmd_train},
        {"predict", cmd_predict},
        {"backtest", cmd_backtest},
        {"quantiles", cmd_quantiles},
        {"interpret", cmd_interpret},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"synth",  "ingest", "cooccur",  "train-word2vec",
                                                   "train-glove", "graph", "train", "predict",
                                                   "backtest", "quantiles", "interpret"};
    return names;
}

void run_command(const std::string& command, const RunConfig& config, const std::string& out_dir) {
    const auto it = registry().find(command);
    if (it == registry().end()) throw ConfigError("unknown command '" + command + "'");
    std::filesystem::create_directories(out_dir);
    Manifest manifest(command, config);
    Run run{config, out_dir, manifest};
    try {
        it->second(run);
        manifest.write(out_dir);
    } catch (...) {
        manifest.discard();
        throw;
    }
}

int exit_code_for(const std::string& kind) {
    if (kind == "config" || kind == "range" || kind == "usage") return 1;
    if (kind == "numerical" || kind == "training") return 3;
    return 2;
}

}  // namespace alphafuse::cli
