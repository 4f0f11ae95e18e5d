#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "alphafuse/nn/tensor.hpp"

namespace alphafuse::nn {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Bias-corrected Adam over every parameter in a ParameterSet.
class Adam {
public:
    explicit Adam(AdamConfig config);

    // Applies one update from p.grad for every parameter; grads are left untouched.
    void step(ParameterSet& params);

    std::size_t steps() const noexcept { return step_; }
    const AdamConfig& config() const noexcept { return config_; }

private:
    struct Moments {
        Tensor m;
        Tensor v;
    };
    AdamConfig config_;
    std::size_t step_ = 0;
    std::map<std::string, Moments> moments_;
};

}  // namespace alphafuse::nn
