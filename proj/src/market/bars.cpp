#include "alphafuse/market/bars.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::market {

namespace {

constexpr std::string_view kHeader = "date,symbol,open,high,low,close,volume";

}  // namespace

void validate_bar(const Bar& b, const std::string& where) {
    auto fail = [&](const std::string& why) { throw ValidationError(where + ": " + why); };
    for (double v : {b.open, b.high, b.low, b.close, b.volume}) {
        if (!std::isfinite(v)) fail("non-finite field");
    }
    if (b.open <= 0.0 || b.high <= 0.0 || b.low <= 0.0 || b.close <= 0.0) fail("non-positive price");
    if (b.volume < 0.0) fail("negative volume");
    if (b.low > std::min(b.open, b.close) || std::max(b.open, b.close) > b.high) {
        fail("prices violate low <= min(open, close) <= max(open, close) <= high");
    }
}

BarPanel BarPanel::from_records(std::vector<BarRecord> records) {
    std::sort(records.begin(), records.end(), [](const BarRecord& a, const BarRecord& b) {
        return a.date != b.date ? a.date < b.date : a.symbol < b.symbol;
    });
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].date == records[i - 1].date && records[i].symbol == records[i - 1].symbol) {
            throw ValidationError("duplicate bar for (" + records[i].date.to_string() + ", " +
                                  records[i].symbol + ")");
        }
    }
    BarPanel p;
    for (const auto& r : records) {
        if (p.calendar_.empty() || p.calendar_.back() != r.date) p.calendar_.push_back(r.date);
        p.symbols_.push_back(r.symbol);
    }
    std::sort(p.symbols_.begin(), p.symbols_.end());
    p.symbols_.erase(std::unique(p.symbols_.begin(), p.symbols_.end()), p.symbols_.end());

    const std::size_t D = p.calendar_.size();
    p.bars_.assign(D * p.symbols_.size(), Bar{});
    p.present_.assign(D * p.symbols_.size(), 0);
    std::size_t d = 0;
    for (const auto& r : records) {
        while (p.calendar_[d] != r.date) ++d;
        validate_bar(r.bar, "bar (" + r.date.to_string() + ", " + r.symbol + ")");
        const std::size_t s = p.symbol_index(r.symbol);
        p.bars_[s * D + d] = r.bar;
        p.present_[s * D + d] = 1;
    }
    return p;
}

const Bar* BarPanel::bar(std::size_t date, std::size_t symbol) const {
    const std::size_t k = symbol * calendar_.size() + date;
    return present_[k] ? &bars_[k] : nullptr;
}

SeriesView BarPanel::series(std::size_t symbol) const {
    const std::size_t D = calendar_.size();
    return {std::span<const Bar>(bars_).subspan(symbol * D, D),
            std::span<const std::uint8_t>(present_).subspan(symbol * D, D)};
}

std::optional<std::size_t> BarPanel::find_symbol(std::string_view symbol) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
    if (it == symbols_.end() || *it != symbol) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
}

std::optional<std::size_t> BarPanel::find_date(Date date) const {
    auto it = std::lower_bound(calendar_.begin(), calendar_.end(), date);
    if (it == calendar_.end() || *it != date) return std::nullopt;
    return static_cast<std::size_t>(it - calendar_.begin());
}

std::size_t BarPanel::symbol_index(std::string_view symbol) const {
    if (auto i = find_symbol(symbol)) return *i;
    throw LookupError("unknown symbol '" + std::string(symbol) + "'");
}

std::size_t BarPanel::date_index(Date date) const {
    if (auto i = find_date(date)) return *i;
    throw LookupError("date " + date.to_string() + " is not in the calendar");
}

std::vector<BarRecord> BarPanel::records() const {
    std::vector<BarRecord> out;
    for (std::size_t d = 0; d < calendar_.size(); ++d) {
        for (std::size_t s = 0; s < symbols_.size(); ++s) {
            if (const Bar* b = bar(d, s)) out.push_back({calendar_[d], symbols_[s], *b});
        }
    }
    return out;
}

BarPanel BarPanel::truncated(std::size_t last) const {
    std::vector<BarRecord> recs;
    for (auto& r : records()) {
        if (r.date <= calendar_.at(last)) recs.push_back(std::move(r));
    }
    return from_records(std::move(recs));
}

BarPanel BarPanel::select_symbols(const std::vector<std::string>& keep) const {
    BarPanel p;
    p.calendar_ = calendar_;
    p.symbols_ = keep;
    std::sort(p.symbols_.begin(), p.symbols_.end());
    p.symbols_.erase(std::unique(p.symbols_.begin(), p.symbols_.end()), p.symbols_.end());
    const std::size_t D = calendar_.size();
    p.bars_.reserve(D * p.symbols_.size());
    p.present_.reserve(D * p.symbols_.size());
    for (const auto& sym : p.symbols_) {
        const std::size_t s = symbol_index(sym);
        p.bars_.insert(p.bars_.end(), bars_.begin() + s * D, bars_.begin() + (s + 1) * D);
        p.present_.insert(p.present_.end(), present_.begin() + s * D, present_.begin() + (s + 1) * D);
    }
    return p;
}

namespace {

void parse_into(std::string_view text, std::vector<BarRecord>& out, const std::string& source) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) {
                throw ParseError(source + ": header must be '" + std::string(kHeader) + "'", line_no);
            }
            header_seen = true;
            continue;
        }
        const auto f = csv::split_line(line);
        if (f.size() != 7) throw ParseError(source + ": expected 7 fields, got " + std::to_string(f.size()), line_no);
        BarRecord r;
        try {
            r.date = Date::parse(f[0]);
        } catch (const ValidationError& e) {
            throw ParseError(source + ": " + e.what(), line_no);
        }
        if (f[1].empty()) throw ParseError(source + ": empty symbol", line_no);
        r.symbol = f[1];
        r.bar = Bar{csv::parse_double(f[2], line_no), csv::parse_double(f[3], line_no),
                    csv::parse_double(f[4], line_no), csv::parse_double(f[5], line_no),
                    csv::parse_double(f[6], line_no)};
        validate_bar(r.bar, source + " line " + std::to_string(line_no) + " (" + r.symbol + " " + f[0] + ")");
        out.push_back(std::move(r));
        if (end == text.size()) break;
    }
    if (!header_seen) throw EmptyInputError(source + ": empty bar file");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

BarPanel parse_bars_csv(std::string_view text) {
    std::vector<BarRecord> recs;
    parse_into(text, recs, "bars");
    if (recs.empty()) throw EmptyInputError("bars: no rows after the header");
    return BarPanel::from_records(std::move(recs));
}

BarPanel load_bars(const std::string& path) { return load_bars(std::vector<std::string>{path}); }

BarPanel load_bars(const std::vector<std::string>& paths) {
    std::vector<BarRecord> recs;
    for (const auto& path : paths) parse_into(slurp(path), recs, path);
    if (recs.empty()) throw EmptyInputError("no bars in input");
    return BarPanel::from_records(std::move(recs));
}

void write_bars_csv(const std::string& path, const BarPanel& panel) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << kHeader << '\n';
    for (const auto& r : panel.records()) {
        out << r.date.to_string() << ',' << r.symbol << ',' << csv::format_double(r.bar.open) << ','
            << csv::format_double(r.bar.high) << ',' << csv::format_double(r.bar.low) << ','
            << csv::format_double(r.bar.close) << ',' << csv::format_double(r.bar.volume) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace alphafuse::market
