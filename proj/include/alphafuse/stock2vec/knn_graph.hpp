#pragma once

#include <string>
#include <vector>

#include "alphafuse/stock2vec/glove.hpp"

namespace alphafuse::stock2vec {

// Directed kNN graph; neighbors[i] is ordered by ascending distance, ties by index.
struct StockGraph {
    std::size_t k = 0;
    std::vector<std::vector<std::size_t>> neighbors;
    std::vector<std::vector<double>> distances;

    std::size_t size() const noexcept { return neighbors.size(); }
    bool has_edge(std::size_t i, std::size_t j) const;
};

// Exact Euclidean search; |S(i)| = min(k, n - 1). Throws ConfigError for k == 0.
StockGraph build_knn_graph(const StockEmbeddingSet& emb, std::size_t k);

// CSV `source,target,rank,distance` with 1-based rank.
void write_graph_csv(const std::string& path, const StockGraph& graph, const std::vector<std::string>& symbols);
StockGraph read_graph_csv(const std::string& path, const std::vector<std::string>& symbols);

}  // namespace alphafuse::stock2vec
