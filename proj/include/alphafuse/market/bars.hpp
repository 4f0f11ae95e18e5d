#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alphafuse/common/date.hpp"

namespace alphafuse::market {

struct Bar {
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

// Throws ValidationError (prefixed by `where`) unless prices are positive,
// low <= min(open, close) <= max(open, close) <= high and volume >= 0.
void validate_bar(const Bar& bar, const std::string& where);

struct BarRecord {
    Date date;
    std::string symbol;
    Bar bar;
};

// One symbol's bars in calendar order; present[t] == 0 marks a missing day.
struct SeriesView {
    std::span<const Bar> bars;
    std::span<const std::uint8_t> present;

    std::size_t size() const noexcept { return bars.size(); }
    bool has(std::size_t t) const { return t < present.size() && present[t] != 0; }
};

// Dense calendar x symbol grid of daily bars. Immutable once built.
class BarPanel {
public:
    BarPanel() = default;
    // Sorts records by (date, symbol); throws ValidationError on duplicates or invalid bars.
    static BarPanel from_records(std::vector<BarRecord> records);

    const std::vector<Date>& calendar() const noexcept { return calendar_; }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    std::size_t num_dates() const noexcept { return calendar_.size(); }
    std::size_t num_symbols() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return calendar_.empty(); }

    const Bar* bar(std::size_t date, std::size_t symbol) const;
    SeriesView series(std::size_t symbol) const;

    std::optional<std::size_t> find_symbol(std::string_view symbol) const;
    std::optional<std::size_t> find_date(Date date) const;
    // Throws LookupError for unknown symbols / dates.
    std::size_t symbol_index(std::string_view symbol) const;
    std::size_t date_index(Date date) const;

    // Panel restricted to dates <= calendar()[last].
    BarPanel truncated(std::size_t last) const;
    BarPanel select_symbols(const std::vector<std::string>& keep) const;
    std::vector<BarRecord> records() const;

private:
    std::vector<Date> calendar_;
    std::vector<std::string> symbols_;
    std::vector<Bar> bars_;               // symbol-major: bars_[s * num_dates() + d]
    std::vector<std::uint8_t> present_;   // same layout
};

// Bar CSV with header `date,symbol,open,high,low,close,volume`.
BarPanel parse_bars_csv(std::string_view text);
BarPanel load_bars(const std::string& path);
// Concatenates several files before validation; duplicate keys across files are rejected.
BarPanel load_bars(const std::vector<std::string>& paths);
void write_bars_csv(const std::string& path, const BarPanel& panel);

}  // namespace alphafuse::market
