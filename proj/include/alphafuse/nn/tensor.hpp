#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace alphafuse::nn {

// Dense row-major matrix of doubles. Vectors are 1 x n rows; batches stack samples as rows.
class Tensor {
public:
    Tensor() = default;
    Tensor(std::size_t rows, std::size_t cols, double fill = 0.0);
    Tensor(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    std::vector<std::size_t> shape() const { return {rows_, cols_}; }
    std::string shape_string() const;

    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

    bool all_finite() const noexcept;
    void fill(double v);

    friend bool operator==(const Tensor&, const Tensor&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

// A trainable tensor with its gradient accumulation slot.
struct Parameter {
    std::string name;
    Tensor value;
    Tensor grad;
};

// Named parameters in lexical name order; references stay valid across insertions.
class ParameterSet {
public:
    Parameter& add(const std::string& name, Tensor value);
    Parameter& at(const std::string& name);
    const Parameter& at(const std::string& name) const;
    bool contains(const std::string& name) const { return params_.count(name) != 0; }
    std::size_t size() const noexcept { return params_.size(); }
    std::vector<std::string> names() const;
    std::size_t scalar_count() const;

    void zero_grad();

    auto begin() { return params_.begin(); }
    auto end() { return params_.end(); }
    auto begin() const { return params_.begin(); }
    auto end() const { return params_.end(); }

private:
    std::map<std::string, Parameter> params_;
};

}  // namespace alphafuse::nn
