#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <vector>

#include "alphafuse/nn/tensor.hpp"

namespace alphafuse::nn {

class Tape;

// Handle to a value recorded on a Tape.
class Var {
public:
    Var() = default;
    Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

    Tape& tape() const { return *tape_; }
    std::size_t id() const noexcept { return id_; }
    bool valid() const noexcept { return tape_ != nullptr; }

    const Tensor& value() const;
    const Tensor& grad() const;
    std::size_t rows() const { return value().rows(); }
    std::size_t cols() const { return value().cols(); }

private:
    Tape* tape_ = nullptr;
    std::size_t id_ = std::numeric_limits<std::size_t>::max();
};

// Reverse-mode computation record. Nodes are appended in forward order and
// visited in exact reverse order by backward(); gradients accumulate additively.
class Tape {
public:
    using BackwardFn = std::function<void(Tape&, const Tensor& out_grad)>;

    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    Var constant(Tensor value);
    // Leaf bound to `p`; backward() adds the leaf gradient into p.grad.
    Var parameter(Parameter& p);

    // Appends an op result. Throws NumericalFault if `value` has NaN/Inf.
    Var record(const char* op, Tensor value, std::initializer_list<Var> inputs, BackwardFn fn);
    Var record(const char* op, Tensor value, const std::vector<Var>& inputs, BackwardFn fn);

    const Tensor& value(std::size_t id) const { return nodes_[id].value; }
    const Tensor& grad(std::size_t id) const { return nodes_[id].grad; }
    bool requires_grad(Var v) const { return nodes_[v.id()].requires_grad; }

    // Gradient buffer of node `id`, allocated (zeroed) on first use.
    Tensor& grad_buffer(std::size_t id);
    void accumulate(Var v, const Tensor& g);

    // Seeds d(loss)/d(loss) = 1 for a 1x1 loss and propagates to every leaf.
    void backward(Var loss);

    std::size_t size() const noexcept { return nodes_.size(); }

private:
    struct Node {
        Tensor value;
        Tensor grad;
        BackwardFn backward;
        Parameter* param = nullptr;
        bool requires_grad = false;
    };
    std::deque<Node> nodes_;  // element references stay valid across push_back
    bool backward_done_ = false;
};

}  // namespace alphafuse::nn
