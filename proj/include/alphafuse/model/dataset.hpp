#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphafuse/common/date.hpp"
#include "alphafuse/market/bars.hpp"
#include "alphafuse/market/factors.hpp"
#include "alphafuse/model/config.hpp"
#include "alphafuse/text/news.hpp"

namespace alphafuse::model {

// Day x stock features aligned to the bar calendar and a fixed stock order.
struct FeatureStore {
    std::vector<Date> calendar;
    std::vector<std::string> symbols;
    std::size_t num_factors = 0;
    std::size_t news_dim = 0;
    std::size_t horizon = 0;

    std::vector<double> tech;           // (d * N + s) * num_factors
    std::vector<std::uint8_t> tech_ok;  // d * N + s, all factors valid
    std::vector<double> news;           // (d * N + s) * news_dim
    std::vector<std::uint8_t> bar_ok;   // d * N + s
    // Label of anchor day d: log(open_{d+h} / open_d); NaN when unavailable.
    std::vector<double> label;

    std::size_t num_dates() const noexcept { return calendar.size(); }
    std::size_t num_stocks() const noexcept { return symbols.size(); }
    std::span<const double> tech_row(std::size_t d, std::size_t s) const {
        return {tech.data() + (d * symbols.size() + s) * num_factors, num_factors};
    }
    std::span<const double> news_row(std::size_t d, std::size_t s) const {
        return {news.data() + (d * symbols.size() + s) * news_dim, news_dim};
    }
};

// `symbols` fixes the stock order (the embedding order). Either panel may be null.
FeatureStore build_feature_store(const market::BarPanel& bars, const market::FactorPanel* factors,
                                 const text::DailyNewsPanel* news, const std::vector<std::string>& symbols,
                                 std::size_t horizon);

// Forecast made at the open of `anchor` from days anchor-T .. anchor-1.
struct Sample {
    std::uint32_t stock = 0;
    std::uint32_t anchor = 0;
    double label = 0.0;  // NaN when unknown
};

struct SampleSet {
    std::vector<Sample> samples;
    std::size_t missing_features = 0;
    std::size_t missing_label = 0;
};

struct SampleWindow {
    std::size_t first_anchor = 0;
    std::size_t last_anchor = 0;
    // Drop samples whose label window ends after this day index.
    std::optional<std::size_t> last_label_day;
    bool require_label = true;
};

// Samples ordered by (anchor, stock). A sample is dropped when any lookback day lacks
// a bar or, with the technical module on, a complete factor row.
SampleSet make_samples(const FeatureStore& store, const ModelConfig& config, const SampleWindow& window);

}  // namespace alphafuse::model
