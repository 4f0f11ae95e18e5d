#include "alphafuse/nn/lstm.hpp"

#include "alphafuse/common/errors.hpp"
#include "alphafuse/nn/ops.hpp"

namespace alphafuse::nn {

LstmState lstm_zero_state(Tape& tape, std::size_t batch, std::size_t hidden) {
    return {tape.constant(Tensor(batch, hidden)), tape.constant(Tensor(batch, hidden))};
}

LstmState lstm_cell(Var x, const LstmState& prev, Var W, Var b) {
    const std::size_t hidden = prev.h.cols();
    if (W.rows() != 4 * hidden || W.cols() != x.cols() + hidden) {
        throw StructuralError("lstm_cell: W is " + W.value().shape_string() + ", expected " +
                              std::to_string(4 * hidden) + "x" + std::to_string(x.cols() + hidden));
    }
    Var z = ops::affine(ops::concat({x, prev.h}), W, b);
    Var i = ops::sigmoid(ops::slice_cols(z, 0, hidden));
    Var f = ops::sigmoid(ops::slice_cols(z, hidden, hidden));
    Var g = ops::tanh(ops::slice_cols(z, 2 * hidden, hidden));
    Var o = ops::sigmoid(ops::slice_cols(z, 3 * hidden, hidden));
    Var c = ops::add(ops::mul(f, prev.c), ops::mul(i, g));
    Var h = ops::mul(o, ops::tanh(c));
    return {h, c};
}

std::vector<Var> lstm_sequence(const std::vector<Var>& seq, const LstmWeights& w, std::size_t hidden) {
    if (seq.empty()) throw StructuralError("lstm: empty sequence");
    LstmState state = lstm_zero_state(seq.front().tape(), seq.front().rows(), hidden);
    std::vector<Var> out;
    out.reserve(seq.size());
    for (const Var& x : seq) {
        state = lstm_cell(x, state, w.W, w.b);
        out.push_back(state.h);
    }
    return out;
}

std::vector<Var> bilstm(const std::vector<Var>& seq, const LstmWeights& forward,
                        const LstmWeights& backward, std::size_t hidden) {
    if (seq.empty()) throw StructuralError("bilstm: empty sequence");
    const std::vector<Var> fwd = lstm_sequence(seq, forward, hidden);
    const std::vector<Var> reversed(seq.rbegin(), seq.rend());
    const std::vector<Var> bwd = lstm_sequence(reversed, backward, hidden);
    const std::size_t T = seq.size();
    std::vector<Var> out;
    out.reserve(T);
    for (std::size_t t = 0; t < T; ++t) out.push_back(ops::concat({fwd[t], bwd[T - 1 - t]}));
    return out;
}

}  // namespace alphafuse::nn
