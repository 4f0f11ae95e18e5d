#include "alphafuse/nn/adam.hpp"

#include <cmath>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::nn {

Adam::Adam(AdamConfig config) : config_(config) {
    if (!(config_.lr > 0.0)) throw ConfigError("adam: learning rate must be > 0");
    if (config_.beta1 < 0.0 || config_.beta1 >= 1.0 || config_.beta2 < 0.0 || config_.beta2 >= 1.0) {
        throw ConfigError("adam: betas must lie in [0, 1)");
    }
}

void Adam::step(ParameterSet& params) {
    ++step_;
    const double t = static_cast<double>(step_);
    const double c1 = 1.0 - std::pow(config_.beta1, t);
    const double c2 = 1.0 - std::pow(config_.beta2, t);
    for (auto& [name, p] : params) {
        auto it = moments_.find(name);
        if (it == moments_.end()) {
            it = moments_.emplace(name, Moments{Tensor(p.value.rows(), p.value.cols()),
                                                Tensor(p.value.rows(), p.value.cols())}).first;
        }
        Moments& mo = it->second;
        if (mo.m.size() != p.value.size() || p.grad.size() != p.value.size()) {
            throw StructuralError("adam: shape of '" + name + "' changed between steps");
        }
        for (std::size_t i = 0; i < p.value.size(); ++i) {
            const double g = p.grad[i];
            mo.m[i] = config_.beta1 * mo.m[i] + (1.0 - config_.beta1) * g;
            mo.v[i] = config_.beta2 * mo.v[i] + (1.0 - config_.beta2) * g * g;
            const double mhat = mo.m[i] / c1;
            const double vhat = mo.v[i] / c2;
            p.value[i] -= config_.lr * mhat / (std::sqrt(vhat) + config_.eps);
        }
        if (!p.value.all_finite()) throw NumericalFault("adam: parameter '" + name + "' became non-finite");
    }
}

}  // namespace alphafuse::nn
