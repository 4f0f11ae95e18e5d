#include "alphafuse/model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "alphafuse/common/errors.hpp"
#include "alphafuse/model/network.hpp"
#include "alphafuse/nn/adam.hpp"
#include "alphafuse/nn/ops.hpp"

namespace alphafuse::model {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

void check_rows_sum_to_one(const nn::Tensor& w, const char* what) {
    for (std::size_t r = 0; r < w.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < w.cols(); ++c) s += w(r, c);
        if (std::abs(s - 1.0) > kWeightSumTolerance) {
            throw NumericalFault(std::string(what) + " weights sum to " + std::to_string(s));
        }
    }
}

std::vector<Sample> gather(const std::vector<Sample>& samples, const std::vector<std::size_t>& idx,
                           std::size_t begin, std::size_t end, double scale) {
    std::vector<Sample> out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        Sample s = samples[idx[i]];
        s.label /= scale;
        out.push_back(s);
    }
    return out;
}

nn::Tensor label_tensor(std::span<const Sample> batch) {
    nn::Tensor y(batch.size(), 1);
    for (std::size_t r = 0; r < batch.size(); ++r) y[r] = batch[r].label;
    return y;
}

double evaluate(nn::ParameterSet& params, const ModelConfig& config, const stock2vec::StockGraph* graph,
                const FeatureStore& store, const std::vector<Sample>& scaled) {
    double sum = 0.0;
    for (std::size_t b = 0; b < scaled.size(); b += config.batch_size) {
        const std::size_t e = std::min(scaled.size(), b + config.batch_size);
        std::span<const Sample> batch(scaled.data() + b, e - b);
        nn::Tape tape;
        const auto fv = forward(tape, params, config, graph, store, batch);
        for (std::size_t r = 0; r < batch.size(); ++r) {
            const double diff = fv.yhat.value()[r] - batch[r].label;
            sum += diff * diff;
        }
    }
    return sum / static_cast<double>(scaled.size());
}

}  // namespace

TrainResult train(const FeatureStore& store, const std::vector<Sample>& samples, const ModelConfig& config,
                  const stock2vec::StockEmbeddingSet* init, const stock2vec::StockGraph* graph) {
    config.validate();
    if (samples.empty()) throw EmptyInputError("train: empty dataset");
    if (config.head != HeadMode::Linear) throw ConfigError("train: only the linear head is trainable");
    for (const auto& s : samples) {
        if (!std::isfinite(s.label)) throw ValidationError("train: sample without a finite label");
    }

    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t n_val = static_cast<std::size_t>(std::floor(config.validation_fraction * static_cast<double>(samples.size())));
    if (samples.size() - n_val == 0) n_val = 0;
    std::size_t n_train = samples.size() - n_val;
    if (config.validation == ValidationMode::Random) {
        std::shuffle(order.begin(), order.end(), rng);
    } else {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return samples[a].anchor < samples[b].anchor; });
        if (n_val > 0) {
            const std::size_t first_val = samples[order[n_train]].anchor;
            std::size_t head = 0;
            while (head < n_train && samples[order[head]].anchor + config.horizon <= first_val) ++head;
            std::size_t tail = n_train;
            while (tail > 0 && samples[order[tail - 1]].anchor == first_val) --tail;
            // val = every sample at or after first_val; purged samples in between are dropped
            order.erase(order.begin() + static_cast<std::ptrdiff_t>(head), order.begin() + static_cast<std::ptrdiff_t>(tail));
            n_train = head;
            n_val = order.size() - n_train;
            if (n_train == 0) throw EmptyInputError("train: no training samples left before the validation window");
        }
    }

    double mean = 0.0;
    for (std::size_t i = 0; i < n_train; ++i) mean += samples[order[i]].label;
    mean /= static_cast<double>(n_train);
    double var = 0.0;
    for (std::size_t i = 0; i < n_train; ++i) var += std::pow(samples[order[i]].label - mean, 2);
    var /= static_cast<double>(n_train);
    const double scale = var > 0.0 ? std::sqrt(var) : 1.0;
    const double unit2 = scale * scale;

    std::vector<std::size_t> train_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    const auto val = gather(samples, order, n_train, order.size(), scale);

    TrainResult result;
    result.validation_samples = n_val;
    result.params = init_parameters(config, store.num_stocks(), init);
    nn::ParameterSet& params = result.params;
    nn::ParameterSet best = params;
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;
    nn::Adam adam({config.lr, 0.9, 0.999, 1e-8});

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(train_idx.begin(), train_idx.end(), rng);
        double loss_sum = 0.0;
        std::size_t batch_no = 0;
        for (std::size_t b = 0; b < n_train; b += config.batch_size, ++batch_no) {
            const std::size_t e = std::min(n_train, b + config.batch_size);
            const auto batch = gather(samples, train_idx, b, e, scale);
            try {
                nn::Tape tape;
                const auto fv = forward(tape, params, config, graph, store, batch);
                nn::Var loss = nn::ops::mse(fv.yhat, tape.constant(label_tensor(batch)));
                check_rows_sum_to_one(fv.beta.value(), "temporal attention");
                if (fv.alpha) check_rows_sum_to_one(fv.alpha->value(), "stock attention");
                params.zero_grad();
                tape.backward(loss);
                adam.step(params);
                loss_sum += loss.value()[0] * static_cast<double>(batch.size());
            } catch (const NumericalFault& err) {
                throw NumericalFault("epoch " + std::to_string(epoch) + " batch " + std::to_string(batch_no) +
                                     " (first sample stock " + std::to_string(batch.front().stock) + " day " +
                                     std::to_string(batch.front().anchor) + "): " + err.what());
            }
        }
        result.train_loss.push_back(loss_sum / static_cast<double>(n_train) * unit2);

        if (n_val == 0) {
            best = params;
            result.best_epoch = epoch;
            continue;
        }
        const double v = evaluate(params, config, graph, store, val);
        result.val_loss.push_back(v * unit2);
        if (v < best_val) {
            best_val = v;
            best = params;
            result.best_epoch = epoch;
            since_best = 0;
        } else if (++since_best >= config.patience) {
            break;
        }
    }
    if (config.epochs > 0) params = std::move(best);

    for (double& w : params.at("head.W").value.values()) w *= scale;
    for (double& w : params.at("head.b").value.values()) w *= scale;
    params.zero_grad();
    return result;
}

std::vector<Forecast> predict(const nn::ParameterSet& params, const ModelConfig& config,
                              const stock2vec::StockGraph* graph, const FeatureStore& store,
                              std::span<const Sample> samples) {
    nn::ParameterSet local = params;
    std::vector<Forecast> out;
    out.reserve(samples.size());
    const std::size_t step = std::max<std::size_t>(config.batch_size, 1);
    for (std::size_t b = 0; b < samples.size(); b += step) {
        const std::size_t e = std::min(samples.size(), b + step);
        std::span<const Sample> batch = samples.subspan(b, e - b);
        nn::Tape tape;
        const auto fv = forward(tape, local, config, graph, store, batch);
        const nn::Tensor& beta = fv.beta.value();
        for (std::size_t r = 0; r < batch.size(); ++r) {
            Forecast f;
            f.stock = batch[r].stock;
            f.anchor = batch[r].anchor;
            f.yhat = fv.yhat.value()(r, 0);
            f.label = batch[r].label;
            const auto row = beta.row(r);
            f.beta.assign(row.begin(), row.end());
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace alphafuse::model
