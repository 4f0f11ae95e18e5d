#include "alphafuse/model/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "alphafuse/common/errors.hpp"
#include "alphafuse/market/returns.hpp"

namespace alphafuse::model {

namespace {

std::unordered_map<std::string, std::size_t> index_of(const std::vector<std::string>& names) {
    std::unordered_map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < names.size(); ++i) m.emplace(names[i], i);
    return m;
}

}  // namespace

FeatureStore build_feature_store(const market::BarPanel& bars, const market::FactorPanel* factors,
                                 const text::DailyNewsPanel* news, const std::vector<std::string>& symbols,
                                 std::size_t horizon) {
    FeatureStore fs;
    fs.calendar = bars.calendar();
    fs.symbols = symbols;
    fs.horizon = horizon;
    const std::size_t D = fs.calendar.size();
    const std::size_t N = symbols.size();
    fs.bar_ok.assign(D * N, 0);
    fs.label.assign(D * N, std::numeric_limits<double>::quiet_NaN());

    std::vector<std::optional<std::size_t>> bar_sym(N);
    for (std::size_t s = 0; s < N; ++s) bar_sym[s] = bars.find_symbol(symbols[s]);
    for (std::size_t s = 0; s < N; ++s) {
        if (!bar_sym[s]) continue;
        for (std::size_t d = 0; d < D; ++d) {
            fs.bar_ok[d * N + s] = bars.bar(d, *bar_sym[s]) != nullptr;
            if (d >= 1) {
                if (auto y = market::forward_return(bars, *bar_sym[s], d - 1, horizon)) fs.label[d * N + s] = *y;
            }
        }
    }

    if (factors) {
        fs.num_factors = factors->num_factors();
        fs.tech.assign(D * N * fs.num_factors, 0.0);
        fs.tech_ok.assign(D * N, 0);
        const auto fsym = index_of(factors->symbols());
        for (std::size_t d = 0; d < D; ++d) {
            std::size_t fd;
            try {
                fd = factors->date_index(fs.calendar[d]);
            } catch (const LookupError&) {
                continue;
            }
            for (std::size_t s = 0; s < N; ++s) {
                auto it = fsym.find(symbols[s]);
                if (it == fsym.end() || !factors->complete(fd, it->second)) continue;
                const auto row = factors->row(fd, it->second);
                std::copy(row.begin(), row.end(), fs.tech.begin() + static_cast<std::ptrdiff_t>((d * N + s) * fs.num_factors));
                fs.tech_ok[d * N + s] = 1;
            }
        }
    } else {
        fs.tech_ok.assign(D * N, 0);
    }

    if (news) {
        fs.news_dim = news->dim();
        fs.news.assign(D * N * fs.news_dim, 0.0);
        const auto nsym = index_of(news->symbols());
        const auto& ncal = news->calendar();
        for (std::size_t d = 0; d < D; ++d) {
            auto dit = std::lower_bound(ncal.begin(), ncal.end(), fs.calendar[d]);
            if (dit == ncal.end() || *dit != fs.calendar[d]) continue;
            const std::size_t nd = static_cast<std::size_t>(dit - ncal.begin());
            for (std::size_t s = 0; s < N; ++s) {
                auto it = nsym.find(symbols[s]);
                if (it == nsym.end()) continue;
                const auto v = news->vector(nd, it->second);
                std::copy(v.begin(), v.end(), fs.news.begin() + static_cast<std::ptrdiff_t>((d * N + s) * fs.news_dim));
            }
        }
    }
    return fs;
}

SampleSet make_samples(const FeatureStore& store, const ModelConfig& config, const SampleWindow& window) {
    SampleSet out;
    const std::size_t N = store.num_stocks();
    const std::size_t D = store.num_dates();
    if (D == 0 || N == 0) return out;
    if (config.modules.tech && store.num_factors == 0) throw StructuralError("make_samples: technical module enabled without factors");
    if (config.modules.news && store.news_dim == 0) throw StructuralError("make_samples: news module enabled without news vectors");
    const std::size_t first = std::max(window.first_anchor, config.T);
    const std::size_t last = std::min(window.last_anchor, D - 1);
    for (std::size_t t = first; t <= last && first <= last; ++t) {
        for (std::size_t s = 0; s < N; ++s) {
            bool ok = true;
            for (std::size_t j = t - config.T; j < t && ok; ++j) {
                ok = store.bar_ok[j * N + s] && (!config.modules.tech || store.tech_ok[j * N + s]);
            }
            if (!ok) {
                ++out.missing_features;
                continue;
            }
            double y = store.label[t * N + s];
            if (window.last_label_day && t + store.horizon > *window.last_label_day) y = std::numeric_limits<double>::quiet_NaN();
            if (std::isnan(y) && window.require_label) {
                ++out.missing_label;
                continue;
            }
            if (!(store.calendar[t - 1] < store.calendar[t])) {
                throw StructuralError("make_samples: feature day " + store.calendar[t - 1].to_string() +
                                      " does not precede label day " + store.calendar[t].to_string());
            }
            out.samples.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t), y});
        }
    }
    return out;
}

}  // namespace alphafuse::model
