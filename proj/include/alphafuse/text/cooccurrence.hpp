#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alphafuse/common/date.hpp"
#include "alphafuse/text/news.hpp"

namespace alphafuse::text {

// Sparse symmetric article co-mention counts; the diagonal is always zero.
class CooccurrenceMatrix {
public:
    struct Entry {
        std::size_t i;
        std::size_t j;
        std::uint64_t count;
    };

    CooccurrenceMatrix() = default;
    explicit CooccurrenceMatrix(std::vector<std::string> symbols);

    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    std::uint64_t at(std::size_t i, std::size_t j) const;
    void add(std::size_t i, std::size_t j, std::uint64_t count = 1);
    // Upper-triangle entries (i < j) with count > 0, ordered by (i, j).
    std::vector<Entry> entries() const;
    std::size_t nonzero_pairs() const noexcept { return counts_.size(); }

private:
    std::vector<std::string> symbols_;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts_;
};

// Adds one to X_ij for every unordered pair of distinct known symbols tagged on an
// article dated within [first, last]. Unknown symbols and repeated tags are ignored.
CooccurrenceMatrix build_cooccurrence(const std::vector<NewsArticle>& articles,
                                      const std::vector<std::string>& symbols,
                                      std::optional<Date> first = std::nullopt,
                                      std::optional<Date> last = std::nullopt);

// CSV `symbol_a,symbol_b,count`, one row per unordered pair with a positive count.
void write_cooccurrence_csv(const std::string& path, const CooccurrenceMatrix& X);
CooccurrenceMatrix read_cooccurrence_csv(const std::string& path, const std::vector<std::string>& symbols);

}  // namespace alphafuse::text
