#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alphafuse/backtest/forecast_panel.hpp"
#include "alphafuse/backtest/forecast_stats.hpp"
#include "alphafuse/backtest/longshort.hpp"
#include "alphafuse/backtest/markowitz.hpp"
#include "alphafuse/backtest/metrics.hpp"
#include "alphafuse/backtest/quantiles.hpp"
#include "alphafuse/common/hash.hpp"
#include "alphafuse/interpret/attention_summary.hpp"
#include "alphafuse/model/trainer.hpp"
#include "alphafuse/stock2vec/glove.hpp"
#include "support/gradient_suite.hpp"

using namespace alphafuse;

namespace {

// Tolerances and budgets.
constexpr double kPrimitiveTol = 1e-6;
constexpr double kEndToEndTol = 1e-4;
constexpr double kGloveTol = 1e-6;
constexpr double kOverfitRatio = 0.05;
constexpr double kRidgeOracleRatio = 0.5;
constexpr double kNnRidgeSlack = 0.02;
constexpr double kPurity = 0.9;
constexpr double kMetricTol = 1e-10;
constexpr double kNeutralTol = 1e-12;
constexpr double kClosedFormTol = 1e-9;
constexpr double kAc1Seconds = 120.0;
constexpr double kAc2Seconds = 30.0;
constexpr double kAc3Seconds = 300.0;
constexpr double kAc4Seconds = 900.0;
constexpr double kAc9Seconds = 600.0;
constexpr std::size_t kSeeds = 10;

const std::vector<std::string> kPipeline = {"synth",  "ingest", "cooccur", "train-word2vec", "train-glove", "graph",
                                            "train",  "predict", "backtest", "quantiles",    "interpret"};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

bool g_all = true;

void report(const std::string& id, const Verdict& v, bool gating = true) {
    std::cout << id << ' ' << (v.pass ? "PASS" : "FAIL") << (gating ? "" : " (diagnostic)") << ' ' << v.detail
              << std::endl;
    if (gating && !v.pass) g_all = false;
}

Verdict guarded(const std::function<Verdict()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

// ------------------------------------------------------------------ AC1

Verdict ac1() {
    const auto t0 = Clock::now();
    double prim = 0.0, layer = 0.0, e2e = 0.0;
    std::string worst_layer;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        for (const auto& c : gradient_suite::primitive_cases(seed)) prim = std::max(prim, c.max_rel_error);
        for (const auto& c : gradient_suite::layer_cases(seed)) {
            if (c.max_rel_error > layer) {
                layer = c.max_rel_error;
                worst_layer = c.name;
            }
        }
        e2e = std::max(e2e, gradient_suite::end_to_end_case(seed).max_rel_error);
    }
    const double secs = seconds_since(t0);
    Verdict v;
    v.pass = prim <= kPrimitiveTol && layer <= kPrimitiveTol && e2e <= kEndToEndTol && secs < kAc1Seconds;
    v.detail = "gradient integrity: primitives " + fmt(prim) + ", layers " + fmt(layer) + " (" + worst_layer +
               "), end-to-end " + fmt(e2e) + " over " + std::to_string(kSeeds) + " seeds, " + fmt(secs) + " s";
    return v;
}

// ------------------------------------------------------------------ AC2

Verdict ac2() {
    const auto t0 = Clock::now();
    double fd = 0.0;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) fd = std::max(fd, gradient_suite::glove_case(seed).max_rel_error);

    const std::size_t per = 4, n = 2 * per;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("S" + std::to_string(i));
    text::CooccurrenceMatrix X(names);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) X.add(i, j, i / per == j / per ? 100 : 1);
    }
    stock2vec::GloveConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 200;
    cfg.lr = 0.05;
    cfg.seed = 3;
    const auto r = stock2vec::train_glove(X, cfg);
    bool monotone = true;
    for (std::size_t t = 1; t < r.loss_trace.size(); ++t) monotone = monotone && r.loss_trace[t] <= r.loss_trace[t - 1];
    double within = 0.0, cross = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < r.embeddings.dim; ++c) s += std::pow(r.embeddings.row(i)[c] - r.embeddings.row(j)[c], 2);
            if (i / per == j / per) {
                within = std::max(within, std::sqrt(s));
            } else {
                cross = std::min(cross, std::sqrt(s));
            }
        }
    }
    const double secs = seconds_since(t0);
    Verdict v;
    v.pass = fd <= kGloveTol && monotone && within < cross && secs < kAc2Seconds;
    v.detail = "GloVe: gradient " + fmt(fd) + ", loss " + fmt(r.loss_trace.front()) + " -> " + fmt(r.loss_trace.back()) +
               (monotone ? " monotone" : " NOT monotone") + ", max within " + fmt(within) + " vs min cross " +
               fmt(cross) + ", " + fmt(secs) + " s";
    return v;
}

// ------------------------------------------------------------------ AC3

Verdict ac3() {
    const auto t0 = Clock::now();
    auto toy = gradient_suite::make_toy(4, 8, 3, 3, 2, 3);
    auto& c = toy.config;
    c.hidden = 16;
    c.m = 8;
    c.temporal_hidden = 8;
    c.epochs = 500;
    c.lr = 0.01;
    c.batch_size = 20;
    c.validation_fraction = 0.0;
    const auto r = model::train(toy.store, toy.samples, c, nullptr, &toy.graph);
    const double secs = seconds_since(t0);
    const double ratio = r.train_loss.back() / r.train_loss.front();
    Verdict v;
    v.pass = toy.samples.size() == 20 && ratio <= kOverfitRatio && secs < kAc3Seconds;
    v.detail = "overfit " + std::to_string(toy.samples.size()) + " samples: final/epoch-1 MSE " + fmt(ratio) + " after " +
               std::to_string(r.train_loss.size()) + " epochs, " + fmt(secs) + " s";
    return v;
}

// ------------------------------------------------------------------ pipeline

struct PipelineRun {
    bool ok = false;
    std::string failed_command;
    double seconds = 0.0;
};

PipelineRun run_pipeline(const std::string& out) {
    const auto t0 = Clock::now();
    std::filesystem::remove_all(out);
    std::filesystem::create_directories(out);
    PipelineRun run;
    for (const auto& cmd : kPipeline) {
        const std::string line = "'" + std::string(ALPHAFUSE_BIN) + "' " + cmd + " --config '" +
                                 std::string(ALPHAFUSE_CONFIG) + "' --out '" + out + "' >>'" + out + "/log.txt' 2>&1";
        if (std::system(line.c_str()) != 0) {
            run.failed_command = cmd;
            run.seconds = seconds_since(t0);
            return run;
        }
    }
    run.ok = true;
    run.seconds = seconds_since(t0);
    return run;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    return f;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double test_r2(const std::string& path) {
    std::vector<double> y, yhat;
    for (const auto& r : backtest::read_forecasts_csv(path)) {
        if (r.set == "test" && !std::isnan(r.y)) {
            y.push_back(r.y);
            yhat.push_back(r.yhat);
        }
    }
    const auto r2 = backtest::r_squared(y, yhat);
    return r2 ? *r2 : std::nan("");
}

// R² of the true expected label on the model's test rows.
double oracle_r2(const std::string& out, std::size_t horizon) {
    std::map<std::string, std::size_t> date_index, symbol_index;
    std::vector<std::vector<double>> signal;  // [date][symbol]
    std::ifstream in(out + "/truth_signal.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto f = split_csv(line);
        const auto d = date_index.emplace(f[0], date_index.size()).first->second;
        const auto s = symbol_index.emplace(f[1], symbol_index.size()).first->second;
        if (signal.size() <= d) signal.resize(d + 1);
        if (signal[d].size() <= s) signal[d].resize(s + 1, std::nan(""));
        signal[d][s] = std::stod(f[2]);
    }
    std::vector<double> y, yhat;
    for (const auto& r : backtest::read_forecasts_csv(out + "/forecasts.csv")) {
        if (r.set != "test" || std::isnan(r.y)) continue;
        const std::size_t t = date_index.at(r.date.to_string());
        const std::size_t s = symbol_index.at(r.symbol);
        if (t + horizon >= signal.size()) continue;
        double o = 0.0;
        for (std::size_t u = t + 1; u <= t + horizon; ++u) o += signal[u][s];
        y.push_back(r.y);
        yhat.push_back(o);
    }
    const auto r2 = backtest::r_squared(y, yhat);
    return r2 ? *r2 : std::nan("");
}

// Minimum and mean over stocks of the share of graph neighbors in the same true cluster.
std::pair<double, double> graph_purity(const std::string& out) {
    const auto truth = nlohmann::json::parse(slurp(out + "/truth.json"));
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    std::ifstream in(out + "/graph.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto f = split_csv(line);
        auto& t = tally[f[0]];
        t.second += 1;
        t.first += truth["cluster"][f[0]] == truth["cluster"][f[1]];
    }
    double lo = 1.0, sum = 0.0;
    for (const auto& [sym, t] : tally) {
        const double p = static_cast<double>(t.first) / static_cast<double>(t.second);
        lo = std::min(lo, p);
        sum += p;
    }
    return {tally.empty() ? 0.0 : lo, tally.empty() ? 0.0 : sum / static_cast<double>(tally.size())};
}

std::vector<std::string> manifest_hashes(const std::string& out) {
    std::vector<std::string> h;
    for (const auto& cmd : kPipeline) h.push_back(sha256_file(out + "/manifests/" + cmd + ".json"));
    return h;
}

// ------------------------------------------------------------------ AC4

Verdict ac4(const PipelineRun& run, const std::string& out) {
    if (!run.ok) return {false, "pipeline failed at '" + run.failed_command + "', see " + out + "/log.txt"};
    const auto cfg = nlohmann::json::parse(slurp(out + "/manifests/train.json"))["config"];
    const double oracle = oracle_r2(out, cfg["model"]["horizon"].get<std::size_t>());
    const double ridge = test_r2(out + "/forecasts_ridge.csv");
    const double nn = test_r2(out + "/forecasts.csv");
    const auto [lo, mean] = graph_purity(out);
    const bool a = ridge >= kRidgeOracleRatio * oracle;
    const bool b = nn >= ridge - kNnRidgeSlack;
    const bool c = lo >= kPurity;
    Verdict v;
    v.pass = a && b && c && run.seconds < kAc4Seconds;
    v.detail = "planted signal: (a) ridge R2 " + fmt(ridge) + " vs oracle " + fmt(oracle) + (a ? " ok" : " LOW") +
               "; (b) model R2 " + fmt(nn) + (b ? " ok" : " LOW") + "; (c) graph purity min " + fmt(lo) + " mean " +
               fmt(mean) + (c ? " ok" : " LOW") + "; pipeline " + fmt(run.seconds) + " s";
    return v;
}

// ------------------------------------------------------------------ AC5

long double ld_mean(const std::vector<double>& x) {
    long double s = 0;
    for (double v : x) s += v;
    return s / static_cast<long double>(x.size());
}

long double ld_corr(const std::vector<double>& a, const std::vector<double>& b) {
    const long double ma = ld_mean(a), mb = ld_mean(b);
    long double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

std::vector<std::string> names(std::size_t n) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back("S" + std::to_string(i));
    return s;
}

std::vector<Date> weekdays(std::size_t n) {
    std::vector<Date> out;
    for (Date d = Date::from_ymd(2021, 1, 4); out.size() < n; d = d.plus_days(1)) {
        if (d.weekday() < 5) out.push_back(d);
    }
    return out;
}

DailyGrid random_grid(std::size_t days, std::size_t n, std::mt19937_64& rng, double scale) {
    DailyGrid g(weekdays(days), names(n));
    std::normal_distribution<double> z(0.0, scale);
    for (double& v : g.values) v = z(rng);
    return g;
}

Verdict ac5() {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_int_distribution<int> len(2, 60), width(3, 12);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(len(rng));
        std::vector<double> y(n), f(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 0.02 * z(rng);
            f[i] = 0.5 * y[i] + 0.01 * z(rng);
        }
        const long double my = ld_mean(y);
        long double res = 0, tot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            res += (static_cast<long double>(y[i]) - f[i]) * (static_cast<long double>(y[i]) - f[i]);
            tot += (y[i] - my) * (y[i] - my);
        }
        worst = std::max(worst, std::abs(*backtest::r_squared(y, f) - static_cast<double>(1 - res / tot)));
        const long double sd = std::sqrt(tot / static_cast<long double>(n - 1));
        worst = std::max(worst, std::abs(*backtest::sharpe(y) - static_cast<double>(my / sd * std::sqrt(252.0L))));

        const std::size_t days = static_cast<std::size_t>(len(rng)), w = static_cast<std::size_t>(width(rng));
        backtest::ForecastPanel p(weekdays(days), names(w));
        p.yhat = random_grid(days, w, rng, 0.01);
        p.y = random_grid(days, w, rng, 0.02);
        long double pnl = 0;
        for (std::size_t i = 0; i < p.y.values.size(); ++i) {
            const double s = p.yhat.values[i] > 0 ? 1.0 : p.yhat.values[i] < 0 ? -1.0 : 0.0;
            pnl += s * p.y.values[i];
        }
        const double ppd = static_cast<double>(1e4L * pnl / static_cast<long double>(p.y.values.size()));
        worst = std::max(worst, std::abs(backtest::quantile_analysis(p, {1})[0].ppd_bps - ppd) / 1e4);
        const auto stats = backtest::forecast_stats(p);
        for (std::size_t d = 0; d < days; ++d) {
            std::vector<double> a(p.yhat.values.begin() + d * w, p.yhat.values.begin() + (d + 1) * w);
            std::vector<double> b(p.y.values.begin() + d * w, p.y.values.begin() + (d + 1) * w);
            worst = std::max(worst, std::abs(*stats.daily_correlation[d] - static_cast<double>(ld_corr(a, b))));
        }
    }
    return {worst <= kMetricTol, "metric oracles: R2, Sharpe, PPD, daily correlation on 100 instances, max abs error " +
                                     fmt(worst)};
}

// ------------------------------------------------------------------ AC6

template <typename Sim>
bool no_look_ahead(const DailyGrid& f, const DailyGrid& r, Sim sim) {
    const auto full = sim(f, r);
    for (std::size_t t : {12u, 25u, 40u}) {
        auto cut = r;
        for (std::size_t d = t + 1; d < r.dates.size(); ++d) {
            for (std::size_t s = 0; s < r.symbols.size(); ++s) cut.at(d, s) = 0.0;
        }
        const auto L = sim(f, cut);
        for (std::size_t d = 0; d <= t; ++d) {
            if (L.pnl[d] != full.pnl[d] || L.positions[d] != full.positions[d]) return false;
        }
    }
    return true;
}

Verdict ac6() {
    std::mt19937_64 rng(77);
    const auto f = random_grid(60, 15, rng, 0.01);
    const auto r = random_grid(60, 15, rng, 0.02);
    const auto L = backtest::simulate_longshort(f, r, 5);
    double net = 0.0;
    for (const auto& w : L.positions) {
        double s = 0.0;
        for (double x : w) s += x;
        net = std::max(net, std::abs(s));
    }
    const bool ls_ok = no_look_ahead(f, r, [](const DailyGrid& a, const DailyGrid& b) {
        return backtest::simulate_longshort(a, b, 5);
    });
    backtest::MarkowitzConfig mc;
    mc.min_history = 10;
    const bool mk_ok = no_look_ahead(f, r, [&](const DailyGrid& a, const DailyGrid& b) {
        return backtest::simulate_markowitz(a, b, mc);
    });

    backtest::MarkowitzConfig plain;
    plain.risk_aversion = 0.5;
    plain.c_lin = 0.0;
    plain.name_cap = 1e9;
    plain.gross_cap = 1e9;
    plain.hedge = false;
    plain.capital = 1.0;
    double cf = 0.0;
    std::normal_distribution<double> z(0.0, 0.01);
    for (std::size_t n : {2u, 5u, 20u}) {
        std::vector<double> yhat(n), I(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            yhat[i] = z(rng);
            I[i * n + i] = 1.0;
        }
        const auto w = backtest::markowitz_weights(yhat, I, std::vector<double>(n, 0.0), plain);
        for (std::size_t i = 0; i < n; ++i) cf = std::max(cf, std::abs(w[i] - yhat[i]));
    }
    Verdict v;
    v.pass = net <= kNeutralTol && ls_ok && mk_ok && cf <= kClosedFormTol;
    v.detail = "simulators: max |sum w| " + fmt(net) + ", no look-ahead long-short " + (ls_ok ? "ok" : "BROKEN") +
               " markowitz " + (mk_ok ? "ok" : "BROKEN") + ", closed form error " + fmt(cf);
    return v;
}

// ------------------------------------------------------------------ AC7

Verdict ac7() {
    std::mt19937_64 rng(78);
    backtest::ForecastPanel p(weekdays(50), names(20));
    p.yhat = random_grid(50, 20, rng, 0.01);
    p.y = random_grid(50, 20, rng, 0.02);
    double total = 0.0;
    for (std::size_t d = 0; d < 50; ++d) {
        double day = 0.0;
        for (std::size_t s = 0; s < 20; ++s) day += (p.yhat.at(d, s) > 0 ? 1.0 : -1.0) * p.y.at(d, s);
        total += day;
    }
    const double mean_bps = 1e4 * total / 1000.0;
    const auto q = backtest::quantile_analysis(p);
    const bool exact = q[0].ppd_bps == mean_bps && q[0].n_trades == 1000;

    bool nested = true;
    std::vector<std::vector<std::vector<std::size_t>>> buckets;
    for (int qr = 1; qr <= 4; ++qr) buckets.push_back(backtest::quantile_buckets(p, qr));
    for (std::size_t d = 0; d < 50; ++d) {
        for (int qr = 1; qr < 4; ++qr) {
            for (std::size_t s : buckets[qr][d]) {
                const auto& outer = buckets[qr - 1][d];
                nested = nested && std::find(outer.begin(), outer.end(), s) != outer.end();
            }
        }
    }

    backtest::ForecastPanel h(weekdays(1), names(4));
    const double yhat[] = {0.03, -0.02, 0.01, -0.005};
    const double y[] = {0.02, 0.01, -0.01, -0.02};
    for (std::size_t s = 0; s < 4; ++s) {
        h.yhat.at(0, s) = yhat[s];
        h.y.at(0, s) = y[s];
    }
    const double hand = backtest::quantile_analysis(h, {1})[0].ppd_bps;
    Verdict v;
    v.pass = exact && nested && std::abs(hand - 50.0) <= 1e-10;
    v.detail = "quantiles: QR=1 PPD " + fmt(q[0].ppd_bps) + " bps vs mean " + fmt(mean_bps) +
               (exact ? " (exact)" : " (MISMATCH)") + ", nested " + (nested ? "yes" : "NO") + ", hand example " +
               fmt(hand) + " bps";
    return v;
}

// ------------------------------------------------------------------ AC8

Verdict ac8() {
    const std::size_t T = 5;
    auto toy = gradient_suite::make_toy(20, 160, T, 1, 2, 8);
    auto& fs = toy.store;
    const std::size_t N = fs.num_stocks();
    const double weight[] = {1.0, 0.5, 0.25, 0.125, 0.0625};  // lag -1 .. -5
    toy.samples.clear();
    for (std::size_t t = T; t < fs.num_dates(); ++t) {
        for (std::size_t s = 0; s < N; ++s) {
            double y = 0.0;
            for (std::size_t lag = 1; lag <= T; ++lag) y += weight[lag - 1] * fs.tech_row(t - lag, s)[0];
            fs.label[t * N + s] = y;
            toy.samples.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t), y});
        }
    }
    auto c = model::ablation_config("Tech", toy.config);
    c.m = 4;
    c.hidden = 8;
    c.temporal_hidden = 8;
    c.epochs = 60;
    c.lr = 0.01;
    c.batch_size = 64;
    c.validation_fraction = 0.0;
    const auto r = model::train(fs, toy.samples, c, nullptr, nullptr);
    const auto fc = model::predict(r.params, c, nullptr, fs, toy.samples);
    std::vector<std::vector<double>> betas;
    for (const auto& f : fc) betas.push_back(f.beta);
    const auto m = interpret::aggregate_temporal_attention(betas);
    Verdict v;
    v.pass = m[T - 1] > m[0];
    v.detail = "temporal attention on recency-weighted labels: lag -1 " + fmt(m[T - 1]) + " vs lag -5 " + fmt(m[0]) +
               ", final train MSE " + fmt(r.train_loss.back());
    return v;
}

// ------------------------------------------------------------------ AC9

Verdict ac9(const PipelineRun& first, const std::vector<std::string>& first_hashes, const std::string& out) {
    if (!first.ok) return {false, "first pipeline run failed at '" + first.failed_command + "'"};
    const auto second = run_pipeline(out);
    if (!second.ok) return {false, "second pipeline run failed at '" + second.failed_command + "'"};
    const auto again = manifest_hashes(out);
    std::size_t same = 0;
    for (std::size_t i = 0; i < again.size(); ++i) same += again[i] == first_hashes[i];
    Verdict v;
    v.pass = same == again.size() && first.seconds < kAc9Seconds && second.seconds < kAc9Seconds;
    v.detail = "end-to-end smoke: " + std::to_string(same) + "/" + std::to_string(again.size()) +
               " manifest hashes identical across two runs, " + fmt(first.seconds) + " s and " + fmt(second.seconds) +
               " s";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    std::string out = argc > 1 ? argv[1] : std::string(ALPHAFUSE_ACCEPTANCE_DIR);
    out = std::filesystem::absolute(out).lexically_normal().string();

    report("AC1", guarded(ac1));
    report("AC2", guarded(ac2));
    report("AC3", guarded(ac3));

    PipelineRun first;
    std::vector<std::string> hashes;
    const auto v4 = guarded([&] {
        first = run_pipeline(out);
        if (first.ok) hashes = manifest_hashes(out);
        return ac4(first, out);
    });
    report("AC4", v4);
    report("AC5", guarded(ac5));
    report("AC6", guarded(ac6));
    report("AC7", guarded(ac7));
    report("AC8", guarded(ac8), false);
    report("AC9", guarded([&] { return ac9(first, hashes, out); }));
    return g_all ? 0 : 1;
}
