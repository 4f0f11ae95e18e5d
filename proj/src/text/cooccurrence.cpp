#include "alphafuse/text/cooccurrence.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::text {

CooccurrenceMatrix::CooccurrenceMatrix(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {}

std::uint64_t CooccurrenceMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw LookupError("co-occurrence index out of range");
    if (i == j) return 0;
    auto it = counts_.find({std::min(i, j), std::max(i, j)});
    return it == counts_.end() ? 0 : it->second;
}

void CooccurrenceMatrix::add(std::size_t i, std::size_t j, std::uint64_t count) {
    if (i >= size() || j >= size()) throw LookupError("co-occurrence index out of range");
    if (i == j || count == 0) return;
    counts_[{std::min(i, j), std::max(i, j)}] += count;
}

std::vector<CooccurrenceMatrix::Entry> CooccurrenceMatrix::entries() const {
    std::vector<Entry> out;
    out.reserve(counts_.size());
    for (const auto& [key, c] : counts_) out.push_back({key.first, key.second, c});
    return out;
}

CooccurrenceMatrix build_cooccurrence(const std::vector<NewsArticle>& articles, const std::vector<std::string>& symbols,
                                      std::optional<Date> first, std::optional<Date> last) {
    CooccurrenceMatrix X(symbols);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t s = 0; s < symbols.size(); ++s) index.emplace(symbols[s], s);
    for (const auto& a : articles) {
        if ((first && a.date < *first) || (last && a.date > *last)) continue;
        std::vector<std::size_t> ids;
        for (const auto& sym : a.symbols) {
            auto it = index.find(sym);
            if (it != index.end()) ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (std::size_t p = 0; p < ids.size(); ++p) {
            for (std::size_t q = p + 1; q < ids.size(); ++q) X.add(ids[p], ids[q]);
        }
    }
    return X;
}

void write_cooccurrence_csv(const std::string& path, const CooccurrenceMatrix& X) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "symbol_a,symbol_b,count\n";
    for (const auto& e : X.entries()) out << X.symbols()[e.i] << ',' << X.symbols()[e.j] << ',' << e.count << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

CooccurrenceMatrix read_cooccurrence_csv(const std::string& path, const std::vector<std::string>& symbols) {
    const auto lines = csv::read_lines(path);
    if (lines.empty() || lines[0] != "symbol_a,symbol_b,count") {
        throw ParseError("co-occurrence header must be 'symbol_a,symbol_b,count'", 1);
    }
    CooccurrenceMatrix X(symbols);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t s = 0; s < symbols.size(); ++s) index.emplace(symbols[s], s);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = csv::split_line(lines[i]);
        if (f.size() != 3) throw ParseError("expected 3 fields", i + 1);
        auto a = index.find(f[0]);
        auto b = index.find(f[1]);
        if (a == index.end() || b == index.end()) continue;
        const double c = csv::parse_double(f[2], i + 1);
        if (c < 0.0 || c != static_cast<double>(static_cast<std::uint64_t>(c))) {
            throw ParseError("count must be a non-negative integer", i + 1);
        }
        X.add(a->second, b->second, static_cast<std::uint64_t>(c));
    }
    return X;
}

}  // namespace alphafuse::text
