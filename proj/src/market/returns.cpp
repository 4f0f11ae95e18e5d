#include "alphafuse/market/returns.hpp"

#include <cmath>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::market {

double log_return(double p_t, double p_prev) {
    if (!(p_t > 0.0) || !(p_prev > 0.0)) {
        throw DomainError("log_return needs positive prices, got " + std::to_string(p_t) + " and " +
                          std::to_string(p_prev));
    }
    return std::log(p_t / p_prev);
}

std::optional<double> forward_return(const BarPanel& panel, std::size_t symbol, std::size_t t,
                                     std::size_t horizon) {
    const std::size_t entry = t + 1;
    const std::size_t exit = t + 1 + horizon;
    if (exit >= panel.num_dates()) return std::nullopt;
    const Bar* a = panel.bar(entry, symbol);
    const Bar* b = panel.bar(exit, symbol);
    if (a == nullptr || b == nullptr) return std::nullopt;
    return log_return(b->open, a->open);
}

std::optional<double> forward_return(const BarPanel& panel, std::string_view symbol, Date t,
                                     std::size_t horizon) {
    return forward_return(panel, panel.symbol_index(symbol), panel.date_index(t), horizon);
}

DailyGrid daily_open_returns(const BarPanel& panel) {
    DailyGrid grid(panel.calendar(), panel.symbols());
    for (std::size_t s = 0; s < panel.num_symbols(); ++s) {
        for (std::size_t d = 1; d < panel.num_dates(); ++d) {
            const Bar* prev = panel.bar(d - 1, s);
            const Bar* cur = panel.bar(d, s);
            if (prev != nullptr && cur != nullptr) grid.at(d, s) = log_return(cur->open, prev->open);
        }
    }
    return grid;
}

}  // namespace alphafuse::market
