#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace alphafuse {

// Text embedding table: header `<rows> <dim>`, then `<label> <v1> ... <vd>` per row.
struct EmbeddingTable {
    std::vector<std::string> labels;
    std::size_t dim = 0;
    std::vector<double> values;  // row-major labels.size() x dim

    const double* row(std::size_t i) const { return values.data() + i * dim; }
};

void write_embedding_table(const std::string& path, const EmbeddingTable& table);
EmbeddingTable read_embedding_table(const std::string& path);

}  // namespace alphafuse
