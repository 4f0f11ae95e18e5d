#pragma once

#include <string>
#include <vector>

namespace alphafuse::interpret {

// Per-lag mean of temporal attention rows; EmptyInputError without rows,
// StructuralError on ragged rows.
std::vector<double> aggregate_temporal_attention(const std::vector<std::vector<double>>& betas);

// `lag,weight` with lag -T .. -1.
void write_attention_csv(const std::string& path, const std::vector<double>& mean_beta);

}  // namespace alphafuse::interpret
