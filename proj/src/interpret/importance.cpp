#include "alphafuse/interpret/importance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::interpret {

nn::Tensor nonnegative_weights(const nn::Tensor& W) {
    nn::Tensor out = W;
    for (double& x : out.values()) x = std::max(x, 0.0);
    return out;
}

FactorRanking factor_importance(const nn::Tensor& W, std::size_t row, std::size_t k_emb) {
    if (row >= W.rows()) throw RangeError("factor_importance: row " + std::to_string(row) + " out of range");
    if (k_emb == 0 || k_emb > W.cols()) {
        throw RangeError("factor_importance: k_emb " + std::to_string(k_emb) + " not in [1, " + std::to_string(W.cols()) + "]");
    }
    const auto r = W.row(row);
    std::vector<std::size_t> idx(W.cols());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
    idx.resize(k_emb);
    FactorRanking out;
    out.indices = std::move(idx);
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    out.uninformative = *lo == *hi;
    return out;
}

std::vector<FactorFrequency> factor_frequency(const nn::Tensor& W, std::size_t k_emb) {
    std::vector<FactorFrequency> freq(W.cols());
    for (std::size_t f = 0; f < W.cols(); ++f) freq[f].factor = f;
    for (std::size_t i = 0; i < W.rows(); ++i) {
        for (std::size_t f : factor_importance(W, i, k_emb).indices) ++freq[f].count;
    }
    std::stable_sort(freq.begin(), freq.end(), [](const FactorFrequency& a, const FactorFrequency& b) { return a.count > b.count; });
    return freq;
}

void write_importance_csv(const std::string& path, const std::vector<FactorFrequency>& freq,
                          const std::vector<std::string>& names) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "rank,factor,count\n";
    for (std::size_t r = 0; r < freq.size(); ++r) {
        out << (r + 1) << ',' << names.at(freq[r].factor) << ',' << freq[r].count << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace alphafuse::interpret
