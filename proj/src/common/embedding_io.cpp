#include "alphafuse/common/embedding_io.hpp"

#include <fstream>
#include <sstream>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse {

void write_embedding_table(const std::string& path, const EmbeddingTable& table) {
    if (table.values.size() != table.labels.size() * table.dim) {
        throw StructuralError("embedding table has " + std::to_string(table.values.size()) +
                              " values for " + std::to_string(table.labels.size()) + "x" +
                              std::to_string(table.dim));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << table.labels.size() << ' ' << table.dim << '\n';
    for (std::size_t i = 0; i < table.labels.size(); ++i) {
        out << table.labels[i];
        for (std::size_t k = 0; k < table.dim; ++k) out << ' ' << csv::format_double(table.row(i)[k]);
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

EmbeddingTable read_embedding_table(const std::string& path) {
    const auto lines = csv::read_lines(path);
    if (lines.empty()) throw EmptyInputError("embedding file '" + path + "' is empty");
    EmbeddingTable table;
    std::size_t rows = 0;
    {
        std::istringstream header(lines[0]);
        if (!(header >> rows >> table.dim) || table.dim == 0) {
            throw ParseError("expected header '<rows> <dim>'", 1);
        }
    }
    if (lines.size() < rows + 1) throw ParseError("fewer rows than declared in header", lines.size());
    table.labels.reserve(rows);
    table.values.reserve(rows * table.dim);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string& line = lines[r + 1];
        std::size_t pos = 0;
        auto next = [&]() -> std::string_view {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            const std::size_t start = pos;
            while (pos < line.size() && line[pos] != ' ') ++pos;
            return std::string_view(line).substr(start, pos - start);
        };
        const auto label = next();
        if (label.empty()) throw ParseError("missing label", r + 2);
        table.labels.emplace_back(label);
        for (std::size_t k = 0; k < table.dim; ++k) {
            const auto field = next();
            if (field.empty()) throw ParseError("row has fewer than " + std::to_string(table.dim) + " values", r + 2);
            table.values.push_back(csv::parse_double(field, r + 2));
        }
        if (!next().empty()) throw ParseError("row has more than " + std::to_string(table.dim) + " values", r + 2);
    }
    return table;
}

}  // namespace alphafuse
