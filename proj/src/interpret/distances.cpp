#include "alphafuse/interpret/distances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::interpret {

std::vector<DistancePair> pairwise_distance_report(const EmbeddingTable& emb) {
    const std::size_t n = emb.labels.size();
    std::vector<DistancePair> out;
    out.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < emb.dim; ++k) {
                const double diff = emb.row(i)[k] - emb.row(j)[k];
                s += diff * diff;
            }
            out.push_back({i, j, std::sqrt(s), 0, 0.0});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const DistancePair& a, const DistancePair& b) { return a.distance < b.distance; });
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[r].rank = r + 1;
        out[r].percentile = 100.0 * static_cast<double>(r + 1) / static_cast<double>(out.size());
    }
    return out;
}

ExtremePairs extreme_pairs(const std::vector<DistancePair>& report, double band) {
    if (!(band > 0.0 && band <= 0.5)) throw RangeError("extreme_pairs: band must lie in (0, 0.5]");
    const auto take = std::min(report.size(), static_cast<std::size_t>(std::ceil(band * static_cast<double>(report.size()))));
    ExtremePairs e;
    e.closest.assign(report.begin(), report.begin() + static_cast<std::ptrdiff_t>(take));
    e.farthest.assign(report.rbegin(), report.rbegin() + static_cast<std::ptrdiff_t>(take));
    return e;
}

void write_distance_csv(const std::string& path, const std::vector<DistancePair>& report,
                        const std::vector<std::string>& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "rank,source,target,distance,percentile\n";
    for (const auto& p : report) {
        out << p.rank << ',' << labels.at(p.i) << ',' << labels.at(p.j) << ',' << csv::format_double(p.distance) << ','
            << csv::format_double(p.percentile) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

void export_embeddings(const std::string& path, const EmbeddingTable& emb) {
    write_embedding_table(path, emb);
}

}  // namespace alphafuse::interpret
