#include "alphafuse/nn/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::nn {

Tensor::Tensor(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Tensor::Tensor(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw StructuralError("tensor " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " given " + std::to_string(values_.size()) + " values");
    }
}

std::string Tensor::shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

bool Tensor::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void Tensor::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

Parameter& ParameterSet::add(const std::string& name, Tensor value) {
    if (params_.count(name)) throw StructuralError("duplicate parameter '" + name + "'");
    Tensor grad(value.rows(), value.cols());
    auto [it, ok] = params_.emplace(name, Parameter{name, std::move(value), std::move(grad)});
    (void)ok;
    return it->second;
}

Parameter& ParameterSet::at(const std::string& name) {
    auto it = params_.find(name);
    if (it == params_.end()) throw LookupError("no parameter named '" + name + "'");
    return it->second;
}

const Parameter& ParameterSet::at(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw LookupError("no parameter named '" + name + "'");
    return it->second;
}

std::vector<std::string> ParameterSet::names() const {
    std::vector<std::string> out;
    out.reserve(params_.size());
    for (const auto& [name, p] : params_) out.push_back(name);
    return out;
}

std::size_t ParameterSet::scalar_count() const {
    std::size_t n = 0;
    for (const auto& [name, p] : params_) n += p.value.size();
    return n;
}

void ParameterSet::zero_grad() {
    for (auto& [name, p] : params_) p.grad.fill(0.0);
}

}  // namespace alphafuse::nn
