#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alphafuse/common/date.hpp"
#include "alphafuse/common/panel.hpp"
#include "alphafuse/market/bars.hpp"
#include "alphafuse/market/factors.hpp"
#include "alphafuse/text/news.hpp"

namespace alphafuse::synth {

struct DrivingFactor {
    market::FactorDefinition factor;
    double beta = 0.0;
};

// Daily open-to-open log return of stock i on day u:
//   r = sum_c beta_c z_c(i, u-2) + noise_std * (cluster_loading * eta_cluster(u) + s_i * eps)
// where z_c is the cross-sectionally standardized factor computed exactly as
// market::compute_factors does, s_i ~ Uniform(0.5, 1.5) is a per-stock noise scale and
// eta, eps ~ N(0, 1). The signal is zero while a factor is masked. Closes sit
// 60% of the way to the next open in log terms. With noise_std = 0 the shocks of the
// first warmup_days() days use kWarmupNoise instead, so the factors have something
// to measure; from then on returns equal the signal exactly.
struct SyntheticSpec {
    std::size_t n_stocks = 50;
    std::size_t days = 750;
    std::size_t clusters = 5;
    std::vector<DrivingFactor> factors = {
        {{"mom_21", market::FactorKind::Momentum, 21}, 0.002},
        {{"vol_21", market::FactorKind::Volatility, 21}, -0.002},
    };
    double noise_std = 0.01;
    double cluster_loading = 0.5;
    double news_rate = 0.2;         // article probability per stock and day
    double fidelity = 0.9;          // chance a co-mention is a same-cluster stock
    std::size_t max_comentions = 3;
    std::size_t words_per_article = 24;
    std::size_t topic_words = 40;   // per cluster
    std::size_t common_words = 60;
    Date start = Date::from_ymd(2018, 1, 2);
    std::uint64_t seed = 7;

    // Throws ConfigError when inconsistent.
    void validate() const;
};

struct SyntheticData {
    market::BarPanel bars;
    std::vector<text::NewsArticle> news;
    std::vector<std::size_t> cluster;  // per symbol
    DailyGrid signal;                  // expected part of each day's return
    DailyGrid returns;                 // realized open-to-open log return
};

inline constexpr double kWarmupNoise = 0.01;
// Days before every driving factor is defined: longest window + 2.
std::size_t warmup_days(const SyntheticSpec& spec);

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Writes bars.csv, news.jsonl, truth.json and truth_signal.csv (`date,symbol,signal,return`).
void write_synthetic(const std::string& dir, const SyntheticData& data, const SyntheticSpec& spec);

// Expected label of anchor t: sum of the signal over days t+1 .. t+horizon. NaN
// when the window leaves the calendar.
double oracle_forecast(const DailyGrid& signal, std::size_t symbol, std::size_t anchor, std::size_t horizon);

}  // namespace alphafuse::synth
