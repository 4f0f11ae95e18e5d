#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphafuse/market/bars.hpp"

namespace alphafuse::market {

// Price/volume factor families. All read closes/volumes at dates <= t only.
//   momentum    log(C_t / C_{t-w})
//   reversal    -log(C_t / C_{t-w})
//   volatility  sample std of the last w close-to-close log returns
//   volume_z    z-score of log(1+V_t) within the last w days
//   amihud      mean |r_s| / (C_s V_s) * 1e6 over the last w days (Amihud 2002)
//   rsi         100 * G / (G + L) over the last w close changes (Cutler's RSI)
//   ma_ratio    C_t / SMA_w(C) - 1
//   range       mean log(H_s / L_s) over the last w days
enum class FactorKind { Momentum, Reversal, Volatility, VolumeZ, Amihud, Rsi, MaRatio, Range };

std::string to_string(FactorKind kind);
FactorKind parse_factor_kind(const std::string& text);

struct FactorDefinition {
    std::string name;
    FactorKind kind = FactorKind::Momentum;
    std::size_t window = 1;

    // Bars needed before t (inclusive of t) for the factor to be defined.
    std::size_t lookback() const;
};

struct FactorRegistry {
    std::vector<FactorDefinition> factors;

    // momentum {5,10,21,63,126,252}, volatility {21,63}, volume_z 21, amihud 21,
    // rsi 14, ma_ratio {5,20,60}, reversal 1, range 21
    static FactorRegistry defaults();
    // JSON: {"factors": [{"name": "...", "kind": "momentum", "window": 21}, ...]}
    static FactorRegistry from_json_text(const std::string& text);
    static FactorRegistry load(const std::string& path);
    std::string to_json_text() const;
    std::size_t max_lookback() const;
};

// Unstandardized factor value at date index t, or nullopt when the window
// reaches before the start of the series or covers a missing bar.
std::optional<double> raw_factor(const FactorDefinition& def, const SeriesView& series, std::size_t t);

// In-place cross-sectional standardization of entries with mask != 0:
// winsorize at mean +/- 3 sd and re-standardize until every z lies in [-3, 3].
// Fewer than two valid entries, or zero dispersion, map to 0.
void standardize_cross_section(std::span<double> values, std::span<const std::uint8_t> mask);

// Standardized date x symbol x factor panel.
class FactorPanel {
public:
    FactorPanel() = default;
    FactorPanel(std::vector<Date> calendar, std::vector<std::string> symbols, std::vector<std::string> names);

    const std::vector<Date>& calendar() const noexcept { return calendar_; }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    const std::vector<std::string>& factor_names() const noexcept { return names_; }
    std::size_t num_dates() const noexcept { return calendar_.size(); }
    std::size_t num_symbols() const noexcept { return symbols_.size(); }
    std::size_t num_factors() const noexcept { return names_.size(); }

    double value(std::size_t d, std::size_t s, std::size_t f) const { return values_[index(d, s, f)]; }
    bool valid(std::size_t d, std::size_t s, std::size_t f) const { return mask_[index(d, s, f)] != 0; }
    // True when every factor is valid for (d, s).
    bool complete(std::size_t d, std::size_t s) const;
    std::span<const double> row(std::size_t d, std::size_t s) const {
        return {values_.data() + index(d, s, 0), names_.size()};
    }

    void set(std::size_t d, std::size_t s, std::size_t f, double v, bool ok);
    std::size_t date_index(Date date) const;

private:
    std::size_t index(std::size_t d, std::size_t s, std::size_t f) const {
        return (d * symbols_.size() + s) * names_.size() + f;
    }
    std::vector<Date> calendar_;
    std::vector<std::string> symbols_;
    std::vector<std::string> names_;
    std::vector<double> values_;
    std::vector<std::uint8_t> mask_;
};

// Throws EmptyInputError on an empty panel.
FactorPanel compute_factors(const BarPanel& panel, const FactorRegistry& registry);

// CSV `date,symbol,<factor names...>`; masked cells are empty fields.
void write_factor_csv(const std::string& path, const FactorPanel& panel);
FactorPanel read_factor_csv(const std::string& path);

}  // namespace alphafuse::market
