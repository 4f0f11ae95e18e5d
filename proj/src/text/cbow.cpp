#include "alphafuse/text/cbow.hpp"

#include <cmath>
#include <random>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::text {

namespace {

constexpr std::size_t kNoiseTableSize = 1'000'000;

double log_sigmoid(double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

std::vector<std::uint32_t> noise_table(const Vocabulary& vocab) {
    double total = 0.0;
    for (auto c : vocab.counts()) total += std::pow(static_cast<double>(c), 0.75);
    std::vector<std::uint32_t> table(kNoiseTableSize);
    std::size_t w = 0;
    double cum = std::pow(static_cast<double>(vocab.counts()[0]), 0.75) / total;
    for (std::size_t a = 0; a < table.size(); ++a) {
        table[a] = static_cast<std::uint32_t>(w);
        if (static_cast<double>(a + 1) / static_cast<double>(table.size()) > cum && w + 1 < vocab.size()) {
            ++w;
            cum += std::pow(static_cast<double>(vocab.counts()[w]), 0.75) / total;
        }
    }
    return table;
}

}  // namespace

EmbeddingTable WordEmbeddingSet::to_table() const {
    return EmbeddingTable{vocab.words(), dim, vectors};
}

WordEmbeddingSet WordEmbeddingSet::from_table(const EmbeddingTable& table) {
    WordEmbeddingSet e;
    e.vocab = Vocabulary::from_words(table.labels, {});
    e.dim = table.dim;
    e.vectors = table.values;
    return e;
}

CbowResult train_cbow(const std::vector<std::vector<std::string>>& corpus, const Vocabulary& vocab,
                      const CbowConfig& config) {
    if (vocab.empty()) throw ConfigError("train_cbow: empty vocabulary");
    if (vocab.size() < config.negatives + 1) {
        throw ConfigError("train_cbow: vocabulary of " + std::to_string(vocab.size()) + " words is smaller than negatives + 1");
    }
    if (config.dim == 0 || config.window == 0) throw ConfigError("train_cbow: dim and window must be positive");
    if (!(config.lr > 0.0)) throw ConfigError("train_cbow: lr must be positive");

    std::vector<std::vector<std::uint32_t>> sentences;
    std::size_t total_words = 0;
    for (const auto& doc : corpus) {
        std::vector<std::uint32_t> ids;
        for (const auto& w : doc) {
            const long id = vocab.find(w);
            if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
        }
        total_words += ids.size();
        if (ids.size() >= 2) sentences.push_back(std::move(ids));
    }

    const std::size_t V = vocab.size();
    const std::size_t D = config.dim;
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    CbowResult result;
    auto& in = result.embeddings.vectors;
    in.resize(V * D);
    for (double& x : in) x = (unit(rng) - 0.5) / static_cast<double>(D);
    std::vector<double> out(V * D, 0.0);

    const auto table = noise_table(vocab);
    std::uniform_int_distribution<std::size_t> pick_noise(0, table.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_shrink(0, config.window - 1);

    const double planned = static_cast<double>(config.epochs) * static_cast<double>(std::max<std::size_t>(total_words, 1));
    double processed = 0.0;
    std::vector<double> h(D), grad_h(D);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        double loss_sum = 0.0;
        std::size_t centers = 0;
        for (const auto& sent : sentences) {
            for (std::size_t pos = 0; pos < sent.size(); ++pos) {
                const double lr = std::max(config.lr * (1.0 - processed / planned), config.lr * 1e-4);
                processed += 1.0;
                const std::size_t reach = config.window - pick_shrink(rng);
                const std::size_t lo = pos >= reach ? pos - reach : 0;
                const std::size_t hi = std::min(sent.size() - 1, pos + reach);
                std::fill(h.begin(), h.end(), 0.0);
                std::size_t ctx = 0;
                for (std::size_t c = lo; c <= hi; ++c) {
                    if (c == pos) continue;
                    const double* v = &in[sent[c] * D];
                    for (std::size_t k = 0; k < D; ++k) h[k] += v[k];
                    ++ctx;
                }
                if (ctx == 0) continue;
                for (double& x : h) x /= static_cast<double>(ctx);
                std::fill(grad_h.begin(), grad_h.end(), 0.0);

                double loss = 0.0;
                for (std::size_t n = 0; n <= config.negatives; ++n) {
                    std::uint32_t target;
                    double label;
                    if (n == 0) {
                        target = sent[pos];
                        label = 1.0;
                    } else {
                        target = table[pick_noise(rng)];
                        if (target == sent[pos]) continue;
                        label = 0.0;
                    }
                    double* u = &out[target * D];
                    double score = 0.0;
                    for (std::size_t k = 0; k < D; ++k) score += h[k] * u[k];
                    loss -= label > 0.0 ? log_sigmoid(score) : log_sigmoid(-score);
                    const double g = (label - sigmoid(score)) * lr;
                    for (std::size_t k = 0; k < D; ++k) {
                        grad_h[k] += g * u[k];
                        u[k] += g * h[k];
                    }
                }
                for (std::size_t c = lo; c <= hi; ++c) {
                    if (c == pos) continue;
                    double* v = &in[sent[c] * D];
                    for (std::size_t k = 0; k < D; ++k) v[k] += grad_h[k] / static_cast<double>(ctx);
                }
                loss_sum += loss;
                ++centers;
            }
        }
        result.epoch_loss.push_back(centers ? loss_sum / static_cast<double>(centers) : 0.0);
    }
    for (double x : in) {
        if (!std::isfinite(x)) throw NumericalFault("train_cbow: non-finite embedding");
    }
    result.embeddings.vocab = vocab;
    result.embeddings.dim = D;
    return result;
}

}  // namespace alphafuse::text
