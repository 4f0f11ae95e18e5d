#include "alphafuse/interpret/news_buckets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::interpret {

ErrorBuckets news_error_buckets(std::span<const double> squared_errors, double tail) {
    if (!(tail > 0.0 && tail <= 0.5)) throw RangeError("news_error_buckets: tail must lie in (0, 0.5]");
    const std::size_t n = squared_errors.size();
    ErrorBuckets b;
    b.degenerate = n < kMinBucketSamples;
    if (n == 0) return b;
    const auto size = std::min(n, static_cast<std::size_t>(std::ceil(tail * static_cast<double>(n) - 1e-9)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return squared_errors[x] < squared_errors[y]; });
    b.low.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(size));
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return squared_errors[x] > squared_errors[y]; });
    b.high.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(size));
    return b;
}

}  // namespace alphafuse::interpret
