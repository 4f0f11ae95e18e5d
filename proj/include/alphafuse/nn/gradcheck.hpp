#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "alphafuse/nn/tape.hpp"

namespace alphafuse::nn {

struct GradCheckOptions {
    double step = 1e-5;
    // 0 checks every coordinate; otherwise a seeded sample of this many per parameter.
    std::size_t max_coords_per_param = 0;
    std::uint64_t seed = 0;
    double denominator_floor = 1e-8;
};

struct GradCheckResult {
    double max_rel_error = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
    std::size_t coords_checked = 0;
};

// Builds a scalar (1x1) loss on the given tape, binding leaves via tape.parameter().
using LossBuilder = std::function<Var(Tape&, ParameterSet&)>;

// Compares tape gradients against central differences (f(x+h) - f(x-h)) / 2h.
// Relative error = |a - n| / max(|a|, |n|, floor). Throws NumericalFault on non-finite loss.
GradCheckResult gradient_check(const LossBuilder& loss, ParameterSet& params,
                               const GradCheckOptions& options = {});

}  // namespace alphafuse::nn
