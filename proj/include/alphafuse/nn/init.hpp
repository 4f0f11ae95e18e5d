#pragma once

#include <cstddef>
#include <random>

#include "alphafuse/nn/tensor.hpp"

namespace alphafuse::nn {

using Rng = std::mt19937_64;

// Uniform(-s, s), s = sqrt(6 / (fan_in + fan_out)); rows = fan_out, cols = fan_in.
Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng);
Tensor uniform(std::size_t rows, std::size_t cols, double lo, double hi, Rng& rng);

// Adds "<prefix>.W" and "<prefix>.b" for an LSTM, forget-gate bias set to `forget_bias`.
void add_lstm_parameters(ParameterSet& params, const std::string& prefix, std::size_t input,
                         std::size_t hidden, Rng& rng, double forget_bias = 1.0);

}  // namespace alphafuse::nn
