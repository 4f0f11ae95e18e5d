#pragma once

#include <string>
#include <vector>

#include "alphafuse/common/embedding_io.hpp"

namespace alphafuse::interpret {

struct DistancePair {
    std::size_t i = 0;
    std::size_t j = 0;
    double distance = 0.0;
    std::size_t rank = 0;     // 1-based, ascending distance
    double percentile = 0.0;  // 100 * rank / pair count
};

// All n(n-1)/2 Euclidean distances between rows, ascending; ties by (i, j).
std::vector<DistancePair> pairwise_distance_report(const EmbeddingTable& emb);

struct ExtremePairs {
    std::vector<DistancePair> closest;
    std::vector<DistancePair> farthest;
};

// The ceil(band * count) closest and farthest pairs.
ExtremePairs extreme_pairs(const std::vector<DistancePair>& report, double band = 0.01);

// `rank,source,target,distance,percentile`
void write_distance_csv(const std::string& path, const std::vector<DistancePair>& report,
                        const std::vector<std::string>& labels);

void export_embeddings(const std::string& path, const EmbeddingTable& emb);

}  // namespace alphafuse::interpret
