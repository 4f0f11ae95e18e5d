#pragma once

#include <cstddef>
#include <vector>

#include "alphafuse/nn/tape.hpp"

// Differentiable primitives. Row r of a batch tensor is sample r.
namespace alphafuse::nn::ops {

// x (B x in), W (out x in), b (1 x out) -> x W^T + b
Var affine(Var x, Var W, Var b);
// x W^T without bias
Var linear(Var x, Var W);

Var relu(Var x);
Var tanh(Var x);
Var sigmoid(Var x);
// Row-wise softmax, max-subtracted.
Var softmax(Var x);

Var concat(const std::vector<Var>& parts);
Var slice_cols(Var x, std::size_t start, std::size_t count);
// Rows of `table` selected by `index` -> index.size() x table.cols()
Var gather_rows(Var table, const std::vector<std::size_t>& index);

Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double s);
// a (B x n) scaled row-wise by column vector c (B x 1).
Var mul_col(Var a, Var c);

// Same values in row-major order with a new shape.
Var reshape(Var x, std::size_t rows, std::size_t cols);
// Sums each run of `group` consecutive rows -> (rows / group) x cols
Var sum_row_groups(Var x, std::size_t group);

// Mean of all entries -> 1 x 1
Var mean(Var x);
// Mean of (pred - target)^2 over all entries -> 1 x 1
Var mse(Var pred, Var target);

}  // namespace alphafuse::nn::ops
