#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "alphafuse/common/date.hpp"

namespace alphafuse {

// Date x symbol grid of doubles; NaN marks a missing cell.
struct DailyGrid {
    std::vector<Date> dates;
    std::vector<std::string> symbols;
    std::vector<double> values;  // date-major: values[d * symbols.size() + s]

    DailyGrid() = default;
    DailyGrid(std::vector<Date> d, std::vector<std::string> s)
        : dates(std::move(d)), symbols(std::move(s)),
          values(dates.size() * symbols.size(), std::numeric_limits<double>::quiet_NaN()) {}

    double& at(std::size_t d, std::size_t s) { return values[d * symbols.size() + s]; }
    double at(std::size_t d, std::size_t s) const { return values[d * symbols.size() + s]; }
    bool has(std::size_t d, std::size_t s) const { return !std::isnan(at(d, s)); }
};

}  // namespace alphafuse
