#pragma once

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "alphafuse/common/date.hpp"
#include "alphafuse/market/bars.hpp"

namespace testing_util {

inline std::vector<alphafuse::Date> weekdays(alphafuse::Date start, std::size_t n) {
    std::vector<alphafuse::Date> out;
    for (alphafuse::Date d = start; out.size() < n; d = d.plus_days(1)) {
        if (d.weekday() < 5) out.push_back(d);
    }
    return out;
}

// One bar per (date, symbol) with open = close = price and a flat range around it.
inline alphafuse::market::BarPanel panel_from_prices(const std::vector<std::vector<double>>& prices,
                                                     double volume = 1e6) {
    using namespace alphafuse;
    const auto cal = weekdays(Date::from_ymd(2020, 1, 6), prices.empty() ? 0 : prices[0].size());
    std::vector<market::BarRecord> recs;
    for (std::size_t s = 0; s < prices.size(); ++s) {
        char name[16];
        std::snprintf(name, sizeof name, "S%03zu", s);
        for (std::size_t d = 0; d < prices[s].size(); ++d) {
            const double p = prices[s][d];
            recs.push_back({cal[d], name, {p, p * 1.01, p * 0.99, p, volume}});
        }
    }
    return market::BarPanel::from_records(std::move(recs));
}

inline std::vector<std::vector<double>> random_walks(std::size_t n, std::size_t days, std::uint64_t seed,
                                                     double vol = 0.02) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, vol);
    std::vector<std::vector<double>> out(n, std::vector<double>(days));
    for (auto& series : out) {
        double p = 50.0;
        for (auto& v : series) {
            v = p;
            p *= std::exp(z(rng));
        }
    }
    return out;
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("af_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testing_util
