#include "alphafuse/synth/generator.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::synth {

namespace {

std::string symbol_name(std::size_t i) {
    std::string s = std::to_string(i);
    return "S" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

std::vector<Date> weekday_calendar(Date start, std::size_t days) {
    std::vector<Date> out;
    for (Date d = start; out.size() < days; d = d.plus_days(1)) {
        if (d.weekday() < 5) out.push_back(d);
    }
    return out;
}

const char* const kFiller[] = {"the", "a", "of", "and", "to", "in", "is", "for", "on", "with"};
const char* const kPunct[] = {",", ".", ";", "!", "?"};

}  // namespace

void SyntheticSpec::validate() const {
    if (n_stocks < 2) throw ConfigError("synth: need at least two stocks");
    if (clusters == 0 || clusters > n_stocks) throw ConfigError("synth: cluster count must lie in [1, n_stocks]");
    if (days < 3) throw ConfigError("synth: need at least three days");
    if (noise_std < 0.0) throw ConfigError("synth: noise_std must be non-negative");
    if (cluster_loading < 0.0) throw ConfigError("synth: cluster_loading must be non-negative");
    if (news_rate < 0.0 || news_rate > 1.0) throw ConfigError("synth: news_rate must lie in [0, 1]");
    if (fidelity < 0.0 || fidelity > 1.0) throw ConfigError("synth: fidelity must lie in [0, 1]");
    if (topic_words == 0 || common_words == 0) throw ConfigError("synth: vocabulary sizes must be positive");
    for (const auto& f : factors) {
        if (f.factor.window == 0) throw ConfigError("synth: factor window must be positive");
    }
}

std::size_t warmup_days(const SyntheticSpec& spec) {
    std::size_t w = 0;
    for (const auto& f : spec.factors) w = std::max(w, f.factor.window);
    return w + 2;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    const std::size_t N = spec.n_stocks;
    const std::size_t D = spec.days;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto calendar = weekday_calendar(spec.start, D);
    std::vector<std::string> symbols(N);
    for (std::size_t i = 0; i < N; ++i) symbols[i] = symbol_name(i);

    SyntheticData out;
    out.cluster.resize(N);
    for (std::size_t i = 0; i < N; ++i) out.cluster[i] = i * spec.clusters / N;
    out.signal = DailyGrid(calendar, symbols);
    out.returns = DailyGrid(calendar, symbols);

    std::vector<double> noise_scale(N), open(N), base_volume(N);
    for (std::size_t i = 0; i < N; ++i) {
        noise_scale[i] = 0.5 + unit(rng);
        open[i] = 20.0 + 80.0 * unit(rng);
        base_volume[i] = 5e5 * std::exp(unit(rng));
    }

    std::vector<std::vector<market::Bar>> bars(N, std::vector<market::Bar>(D));
    const std::vector<std::uint8_t> present(D, 1);
    std::vector<double> z(N);
    std::vector<std::uint8_t> mask(N);
    const std::size_t warmup = warmup_days(spec);

    for (std::size_t u = 0; u <= D; ++u) {
        std::vector<double> signal(N, 0.0);
        if (u >= 2) {
            for (const auto& df : spec.factors) {
                for (std::size_t i = 0; i < N; ++i) {
                    market::SeriesView view{std::span<const market::Bar>(bars[i].data(), u - 1),
                                            std::span<const std::uint8_t>(present.data(), u - 1)};
                    const auto v = market::raw_factor(df.factor, view, u - 2);
                    z[i] = v.value_or(0.0);
                    mask[i] = v && std::isfinite(*v);
                }
                market::standardize_cross_section(z, mask);
                for (std::size_t i = 0; i < N; ++i) {
                    if (mask[i]) signal[i] += df.beta * z[i];
                }
            }
        }
        std::vector<double> eta(spec.clusters);
        for (double& e : eta) e = normal(rng);
        const double scale = spec.noise_std == 0.0 && u < warmup ? kWarmupNoise : spec.noise_std;
        std::vector<double> r(N);
        for (std::size_t i = 0; i < N; ++i) {
            const double eps = normal(rng);
            r[i] = u == 0 ? 0.0 : signal[i] + scale * (spec.cluster_loading * eta[out.cluster[i]] + noise_scale[i] * eps);
        }
        for (std::size_t i = 0; i < N; ++i) {
            if (u >= 1) {
                market::Bar& b = bars[i][u - 1];
                b.close = b.open * std::exp(0.6 * r[i]);
                b.high = std::max(b.open, b.close) * std::exp(0.004 * std::abs(normal(rng)));
                b.low = std::min(b.open, b.close) * std::exp(-0.004 * std::abs(normal(rng)));
                b.volume = std::round(base_volume[i] * std::exp(0.3 * normal(rng)));
            }
            if (u < D) {
                if (u >= 1) open[i] *= std::exp(r[i]);
                bars[i][u].open = open[i];
                out.signal.at(u, i) = u >= 1 ? signal[i] : 0.0;
                out.returns.at(u, i) = r[i];
            }
        }
    }

    std::vector<market::BarRecord> records;
    records.reserve(N * D);
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t i = 0; i < N; ++i) records.push_back({calendar[d], symbols[i], bars[i][d]});
    }
    out.bars = market::BarPanel::from_records(std::move(records));

    std::vector<std::vector<std::size_t>> members(spec.clusters);
    for (std::size_t i = 0; i < N; ++i) members[out.cluster[i]].push_back(i);
    std::size_t article_no = 0;
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t i = 0; i < N; ++i) {
            if (unit(rng) >= spec.news_rate) continue;
            text::NewsArticle a;
            a.id = "n" + std::to_string(article_no++);
            a.date = calendar[d];
            a.symbols.push_back(symbols[i]);
            const std::size_t c = out.cluster[i];
            const auto extra = static_cast<std::size_t>(unit(rng) * static_cast<double>(spec.max_comentions + 1));
            for (std::size_t e = 0; e < extra; ++e) {
                std::size_t j;
                if (unit(rng) < spec.fidelity || spec.clusters == 1) {
                    const auto& pool = members[c];
                    j = pool[static_cast<std::size_t>(unit(rng) * static_cast<double>(pool.size()))];
                } else {
                    do {
                        j = static_cast<std::size_t>(unit(rng) * static_cast<double>(N));
                    } while (out.cluster[j] == c);
                }
                if (j != i) a.symbols.push_back(symbols[j]);
            }
            std::string text;
            for (std::size_t w = 0; w < spec.words_per_article; ++w) {
                if (!text.empty()) text.push_back(' ');
                const double roll = unit(rng);
                if (roll < 0.5) {
                    const auto k = static_cast<std::size_t>(unit(rng) * static_cast<double>(spec.topic_words));
                    text += "topic" + std::to_string(c) + "word" + std::to_string(k);
                } else if (roll < 0.8) {
                    const auto k = static_cast<std::size_t>(unit(rng) * static_cast<double>(spec.common_words));
                    text += "Common" + std::to_string(k);
                } else if (roll < 0.97) {
                    text += kFiller[static_cast<std::size_t>(unit(rng) * 10.0)];
                } else {
                    text += "https://example.com/" + a.id;
                }
                if (unit(rng) < 0.1) text += kPunct[static_cast<std::size_t>(unit(rng) * 5.0)];
            }
            a.text = std::move(text);
            out.news.push_back(std::move(a));
        }
    }
    return out;
}

void write_synthetic(const std::string& dir, const SyntheticData& data, const SyntheticSpec& spec) {
    std::filesystem::create_directories(dir);
    market::write_bars_csv(dir + "/bars.csv", data.bars);
    {
        std::ofstream out(dir + "/news.jsonl", std::ios::binary);
        if (!out) throw IoError("cannot write news.jsonl");
        for (const auto& a : data.news) out << text::to_ndjson(a) << '\n';
    }
    {
        nlohmann::ordered_json j;
        j["n_stocks"] = spec.n_stocks;
        j["days"] = spec.days;
        j["clusters"] = spec.clusters;
        j["noise_std"] = spec.noise_std;
        j["cluster_loading"] = spec.cluster_loading;
        j["news_rate"] = spec.news_rate;
        j["fidelity"] = spec.fidelity;
        j["seed"] = spec.seed;
        nlohmann::ordered_json factors = nlohmann::ordered_json::array();
        for (const auto& f : spec.factors) {
            factors.push_back({{"name", f.factor.name}, {"kind", market::to_string(f.factor.kind)},
                               {"window", f.factor.window}, {"beta", f.beta}});
        }
        j["factors"] = factors;
        nlohmann::ordered_json cl = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < data.cluster.size(); ++i) cl[data.signal.symbols[i]] = data.cluster[i];
        j["cluster"] = cl;
        std::ofstream out(dir + "/truth.json", std::ios::binary);
        if (!out) throw IoError("cannot write truth.json");
        out << j.dump(2) << '\n';
    }
    std::ofstream out(dir + "/truth_signal.csv", std::ios::binary);
    if (!out) throw IoError("cannot write truth_signal.csv");
    out << "date,symbol,signal,return\n";
    for (std::size_t d = 0; d < data.signal.dates.size(); ++d) {
        for (std::size_t s = 0; s < data.signal.symbols.size(); ++s) {
            out << data.signal.dates[d].to_string() << ',' << data.signal.symbols[s] << ','
                << csv::format_double(data.signal.at(d, s)) << ',' << csv::format_double(data.returns.at(d, s)) << '\n';
        }
    }
    if (!out) throw IoError("write failed for truth_signal.csv");
}

double oracle_forecast(const DailyGrid& signal, std::size_t symbol, std::size_t anchor, std::size_t horizon) {
    if (anchor + horizon >= signal.dates.size()) return std::nan("");
    double s = 0.0;
    for (std::size_t u = anchor + 1; u <= anchor + horizon; ++u) s += signal.at(u, symbol);
    return s;
}

}  // namespace alphafuse::synth
