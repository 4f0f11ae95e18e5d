#pragma once

#include <span>
#include <vector>

#include "alphafuse/model/config.hpp"
#include "alphafuse/model/dataset.hpp"
#include "alphafuse/nn/tensor.hpp"
#include "alphafuse/stock2vec/glove.hpp"
#include "alphafuse/stock2vec/knn_graph.hpp"

namespace alphafuse::model {

struct TrainResult {
    nn::ParameterSet params;
    std::vector<double> train_loss;  // per epoch, label units
    std::vector<double> val_loss;    // per epoch, empty without a validation split
    std::size_t best_epoch = 0;
    std::size_t validation_samples = 0;
};

// Adam on mini-batches of shuffled samples with a seeded random validation split and
// early stopping; the best-validation parameters are returned. Labels are divided by
// their training standard deviation during optimization and the head is rescaled at
// the end. Only the linear head is trainable.
TrainResult train(const FeatureStore& store, const std::vector<Sample>& samples, const ModelConfig& config,
                  const stock2vec::StockEmbeddingSet* init, const stock2vec::StockGraph* graph);

struct Forecast {
    std::size_t stock = 0;
    std::size_t anchor = 0;
    double yhat = 0.0;
    double label = 0.0;
    std::vector<double> beta;
};

// Pure evaluation; output order follows `samples`.
std::vector<Forecast> predict(const nn::ParameterSet& params, const ModelConfig& config,
                              const stock2vec::StockGraph* graph, const FeatureStore& store,
                              std::span<const Sample> samples);

}  // namespace alphafuse::model
