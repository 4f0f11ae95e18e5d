#include "alphafuse/interpret/attention_summary.hpp"

#include <fstream>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::interpret {

std::vector<double> aggregate_temporal_attention(const std::vector<std::vector<double>>& betas) {
    if (betas.empty()) throw EmptyInputError("aggregate_temporal_attention: no samples");
    const std::size_t T = betas.front().size();
    std::vector<double> mean(T, 0.0);
    for (const auto& b : betas) {
        if (b.size() != T) throw StructuralError("aggregate_temporal_attention: ragged attention rows");
        for (std::size_t p = 0; p < T; ++p) mean[p] += b[p];
    }
    for (double& m : mean) m /= static_cast<double>(betas.size());
    return mean;
}

void write_attention_csv(const std::string& path, const std::vector<double>& mean_beta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "lag,weight\n";
    const auto T = static_cast<long>(mean_beta.size());
    for (long p = 0; p < T; ++p) out << (p - T) << ',' << csv::format_double(mean_beta[static_cast<std::size_t>(p)]) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace alphafuse::interpret
