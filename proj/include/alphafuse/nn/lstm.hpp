#pragma once

#include <cstddef>
#include <vector>

#include "alphafuse/nn/tape.hpp"

namespace alphafuse::nn {

// Gate blocks in W (4H x (in+H)) and b (1 x 4H) are ordered input, forget, cell, output.
struct LstmState {
    Var h;
    Var c;
};

LstmState lstm_zero_state(Tape& tape, std::size_t batch, std::size_t hidden);

// c_t = f*c_prev + i*g, h_t = o*tanh(c_t)
LstmState lstm_cell(Var x, const LstmState& prev, Var W, Var b);

struct LstmWeights {
    Var W;
    Var b;
};

// Runs one LSTM over `seq` in order and returns the hidden state after each step.
std::vector<Var> lstm_sequence(const std::vector<Var>& seq, const LstmWeights& w, std::size_t hidden);

// out[t] = [forward_h(t), backward_h(t)], where the backward LSTM reads the
// sequence from the end. Throws StructuralError on an empty sequence.
std::vector<Var> bilstm(const std::vector<Var>& seq, const LstmWeights& forward,
                        const LstmWeights& backward, std::size_t hidden);

}  // namespace alphafuse::nn
