#pragma once

#include <span>
#include <vector>

namespace alphafuse::interpret {

inline constexpr double kDefaultErrorTail = 0.05;
inline constexpr std::size_t kMinBucketSamples = 20;

struct ErrorBuckets {
    std::vector<std::size_t> low;   // ascending error
    std::vector<std::size_t> high;  // descending error
    // Fewer than kMinBucketSamples samples; the tails are not meaningful percentiles.
    bool degenerate = false;
};

// Each bucket holds ceil(tail * N) sample indices; ties are broken by ascending index.
ErrorBuckets news_error_buckets(std::span<const double> squared_errors, double tail = kDefaultErrorTail);

}  // namespace alphafuse::interpret
