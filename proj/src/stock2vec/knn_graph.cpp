#include "alphafuse/stock2vec/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::stock2vec {

bool StockGraph::has_edge(std::size_t i, std::size_t j) const {
    const auto& s = neighbors.at(i);
    return std::find(s.begin(), s.end(), j) != s.end();
}

StockGraph build_knn_graph(const StockEmbeddingSet& emb, std::size_t k) {
    if (k == 0) throw ConfigError("build_knn_graph: k must be at least 1");
    const std::size_t n = emb.size();
    StockGraph g;
    g.k = k;
    g.neighbors.resize(n);
    g.distances.resize(n);
    const std::size_t keep = n == 0 ? 0 : std::min(k, n - 1);
    std::vector<double> dist(n);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ei = emb.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            const auto ej = emb.row(j);
            double s = 0.0;
            for (std::size_t c = 0; c < emb.dim; ++c) s += (ei[c] - ej[c]) * (ei[c] - ej[c]);
            dist[j] = std::sqrt(s);
        }
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
        const auto mid = order.begin() + static_cast<std::ptrdiff_t>(keep);
        std::partial_sort(order.begin(), mid, order.end(), [&](std::size_t a, std::size_t b) {
            return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
        });
        g.neighbors[i].assign(order.begin(), mid);
        for (std::size_t j : g.neighbors[i]) g.distances[i].push_back(dist[j]);
    }
    return g;
}

void write_graph_csv(const std::string& path, const StockGraph& graph, const std::vector<std::string>& symbols) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "source,target,rank,distance\n";
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (std::size_t r = 0; r < graph.neighbors[i].size(); ++r) {
            out << symbols.at(i) << ',' << symbols.at(graph.neighbors[i][r]) << ',' << (r + 1) << ','
                << csv::format_double(graph.distances[i][r]) << '\n';
        }
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

StockGraph read_graph_csv(const std::string& path, const std::vector<std::string>& symbols) {
    const auto lines = csv::read_lines(path);
    if (lines.empty() || lines[0] != "source,target,rank,distance") {
        throw ParseError("graph header must be 'source,target,rank,distance'", 1);
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t s = 0; s < symbols.size(); ++s) index.emplace(symbols[s], s);
    struct Edge {
        std::size_t rank;
        std::size_t target;
        double distance;
    };
    std::vector<std::vector<Edge>> edges(symbols.size());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = csv::split_line(lines[i]);
        if (f.size() != 4) throw ParseError("expected 4 fields", i + 1);
        auto a = index.find(f[0]);
        auto b = index.find(f[1]);
        if (a == index.end() || b == index.end()) throw ParseError("unknown symbol in graph", i + 1);
        edges[a->second].push_back({static_cast<std::size_t>(csv::parse_double(f[2], i + 1)), b->second,
                                    csv::parse_double(f[3], i + 1)});
    }
    StockGraph g;
    g.neighbors.resize(symbols.size());
    g.distances.resize(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        std::sort(edges[i].begin(), edges[i].end(), [](const Edge& x, const Edge& y) { return x.rank < y.rank; });
        for (const auto& e : edges[i]) {
            g.neighbors[i].push_back(e.target);
            g.distances[i].push_back(e.distance);
        }
        g.k = std::max(g.k, edges[i].size());
    }
    return g;
}

}  // namespace alphafuse::stock2vec
