#include "alphafuse/market/universe.hpp"

#include <algorithm>

namespace alphafuse::market {

namespace {

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<std::string> filter_universe(const BarPanel& panel, const UniverseFilter& filter,
                                         std::optional<Date> window_start, std::optional<Date> window_end) {
    std::vector<std::string> keep;
    for (std::size_t s = 0; s < panel.num_symbols(); ++s) {
        std::vector<double> dollar_volume;
        std::vector<double> close;
        for (std::size_t d = 0; d < panel.num_dates(); ++d) {
            const Date date = panel.calendar()[d];
            if ((window_start && date < *window_start) || (window_end && date > *window_end)) continue;
            if (const Bar* b = panel.bar(d, s)) {
                dollar_volume.push_back(b->close * b->volume);
                close.push_back(b->close);
            }
        }
        if (close.empty() || close.size() < filter.min_history) continue;
        if (median(dollar_volume) < filter.min_median_dollar_volume) continue;
        if (median(close) < filter.min_price) continue;
        keep.push_back(panel.symbols()[s]);
    }
    return keep;
}

}  // namespace alphafuse::market
