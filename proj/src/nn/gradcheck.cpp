#include "alphafuse/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::nn {

namespace {

double evaluate(const LossBuilder& loss, ParameterSet& params) {
    Tape tape;
    const Var out = loss(tape, params);
    const Tensor& v = out.value();
    if (v.size() != 1) throw StructuralError("gradient_check: loss must be 1x1, got " + v.shape_string());
    if (!std::isfinite(v[0])) throw NumericalFault("gradient_check: loss is non-finite");
    return v[0];
}

}  // namespace

GradCheckResult gradient_check(const LossBuilder& loss, ParameterSet& params, const GradCheckOptions& options) {
    params.zero_grad();
    {
        Tape tape;
        const Var out = loss(tape, params);
        if (!std::isfinite(out.value()[0])) throw NumericalFault("gradient_check: loss is non-finite");
        tape.backward(out);
    }

    std::mt19937_64 rng(options.seed);
    GradCheckResult result;
    const double h = options.step;
    for (auto& [name, p] : params) {
        std::vector<std::size_t> coords(p.value.size());
        std::iota(coords.begin(), coords.end(), std::size_t{0});
        if (options.max_coords_per_param != 0 && coords.size() > options.max_coords_per_param) {
            std::shuffle(coords.begin(), coords.end(), rng);
            coords.resize(options.max_coords_per_param);
            std::sort(coords.begin(), coords.end());
        }
        for (std::size_t k : coords) {
            const double saved = p.value[k];
            p.value[k] = saved + h;
            const double up = evaluate(loss, params);
            p.value[k] = saved - h;
            const double down = evaluate(loss, params);
            p.value[k] = saved;

            const double numeric = (up - down) / (2.0 * h);
            const double analytic = p.grad[k];
            const double denom = std::max({std::abs(analytic), std::abs(numeric), options.denominator_floor});
            const double rel = std::abs(analytic - numeric) / denom;
            ++result.coords_checked;
            if (result.worst_param.empty() || rel > result.max_rel_error) {
                result.max_rel_error = rel;
                result.worst_param = name;
                result.worst_index = k;
                result.worst_analytic = analytic;
                result.worst_numeric = numeric;
            }
        }
    }
    return result;
}

}  // namespace alphafuse::nn
