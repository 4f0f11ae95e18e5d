#pragma once

#include <string>
#include <vector>

#include "alphafuse/nn/tensor.hpp"

namespace alphafuse::interpret {

inline constexpr std::size_t kDefaultTopFactors = 50;

struct FactorRanking {
    std::vector<std::size_t> indices;
    // Every weight in the row is equal, so the order is the tie rule alone.
    bool uninformative = false;
};

// max(W, 0) elementwise, the weights of the non-negative technical layer.
nn::Tensor nonnegative_weights(const nn::Tensor& W);

// Indices of the k_emb largest entries of row `row`, descending, ties by index.
// Throws RangeError when k_emb is 0 or exceeds the column count, or row is out of range.
FactorRanking factor_importance(const nn::Tensor& W, std::size_t row, std::size_t k_emb);

struct FactorFrequency {
    std::size_t factor = 0;
    std::size_t count = 0;
};

// How often each factor appears in the per-row top k_emb lists; descending count, ties by index.
std::vector<FactorFrequency> factor_frequency(const nn::Tensor& W, std::size_t k_emb);

// `rank,factor,count`
void write_importance_csv(const std::string& path, const std::vector<FactorFrequency>& freq,
                          const std::vector<std::string>& names);

}  // namespace alphafuse::interpret
