#include "alphafuse/nn/tape.hpp"

#include "alphafuse/common/errors.hpp"

namespace alphafuse::nn {

const Tensor& Var::value() const { return tape_->value(id_); }
const Tensor& Var::grad() const { return tape_->grad(id_); }

Var Tape::constant(Tensor value) {
    if (!value.all_finite()) throw NumericalFault("constant input contains non-finite values");
    nodes_.push_back(Node{std::move(value), {}, {}, nullptr, false});
    return Var(this, nodes_.size() - 1);
}

Var Tape::parameter(Parameter& p) {
    if (!p.value.all_finite()) throw NumericalFault("parameter '" + p.name + "' is non-finite");
    nodes_.push_back(Node{p.value, {}, {}, &p, true});
    return Var(this, nodes_.size() - 1);
}

Var Tape::record(const char* op, Tensor value, std::initializer_list<Var> inputs, BackwardFn fn) {
    return record(op, std::move(value), std::vector<Var>(inputs), std::move(fn));
}

Var Tape::record(const char* op, Tensor value, const std::vector<Var>& inputs, BackwardFn fn) {
    if (!value.all_finite()) {
        throw NumericalFault(std::string(op) + " produced non-finite values (shape " +
                             value.shape_string() + ")");
    }
    bool needs = false;
    for (const Var& in : inputs) {
        if (&in.tape() != this) throw StructuralError(std::string(op) + ": input from another tape");
        needs = needs || nodes_[in.id()].requires_grad;
    }
    nodes_.push_back(Node{std::move(value), {}, needs ? std::move(fn) : BackwardFn{}, nullptr, needs});
    return Var(this, nodes_.size() - 1);
}

Tensor& Tape::grad_buffer(std::size_t id) {
    Node& n = nodes_[id];
    if (n.grad.empty() && !n.value.empty()) n.grad = Tensor(n.value.rows(), n.value.cols());
    return n.grad;
}

void Tape::accumulate(Var v, const Tensor& g) {
    if (!nodes_[v.id()].requires_grad) return;
    Tensor& buf = grad_buffer(v.id());
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] += g[i];
}

void Tape::backward(Var loss) {
    if (backward_done_) throw StructuralError("backward() already ran on this tape");
    const Tensor& lv = nodes_[loss.id()].value;
    if (lv.rows() != 1 || lv.cols() != 1) {
        throw StructuralError("backward() needs a 1x1 loss, got " + lv.shape_string());
    }
    backward_done_ = true;
    grad_buffer(loss.id())[0] += 1.0;
    for (std::size_t i = loss.id() + 1; i-- > 0;) {
        Node& n = nodes_[i];
        if (!n.requires_grad || n.grad.empty()) continue;
        if (n.backward) n.backward(*this, n.grad);
        if (n.param != nullptr) {
            Tensor& pg = n.param->grad;
            if (pg.size() != n.grad.size()) pg = Tensor(n.grad.rows(), n.grad.cols());
            for (std::size_t k = 0; k < pg.size(); ++k) pg[k] += n.grad[k];
        }
    }
}

}  // namespace alphafuse::nn
