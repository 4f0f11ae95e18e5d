#include "alphafuse/nn/init.hpp"

#include <cmath>

namespace alphafuse::nn {

Tensor uniform(std::size_t rows, std::size_t cols, double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Tensor t(rows, cols);
    for (double& v : t.values()) v = dist(rng);
    return t;
}

Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng) {
    const double s = std::sqrt(6.0 / static_cast<double>(rows + cols));
    return uniform(rows, cols, -s, s, rng);
}

void add_lstm_parameters(ParameterSet& params, const std::string& prefix, std::size_t input,
                         std::size_t hidden, Rng& rng, double forget_bias) {
    params.add(prefix + ".W", glorot_uniform(4 * hidden, input + hidden, rng));
    Tensor b(1, 4 * hidden);
    for (std::size_t k = hidden; k < 2 * hidden; ++k) b[k] = forget_bias;
    params.add(prefix + ".b", std::move(b));
}

}  // namespace alphafuse::nn
