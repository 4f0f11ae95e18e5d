#include "alphafuse/market/factors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "alphafuse/common/csv.hpp"
#include "alphafuse/common/errors.hpp"

namespace alphafuse::market {

namespace {

constexpr double kWinsorBound = 3.0;
constexpr int kMaxWinsorPasses = 500;

struct KindName {
    FactorKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {FactorKind::Momentum, "momentum"}, {FactorKind::Reversal, "reversal"},
    {FactorKind::Volatility, "volatility"}, {FactorKind::VolumeZ, "volume_z"},
    {FactorKind::Amihud, "amihud"}, {FactorKind::Rsi, "rsi"},
    {FactorKind::MaRatio, "ma_ratio"}, {FactorKind::Range, "range"},
};

// Every bar in [t - back, t] present.
bool window_present(const SeriesView& s, std::size_t t, std::size_t back) {
    if (t >= s.size() || t < back) return false;
    for (std::size_t k = t - back; k <= t; ++k) {
        if (!s.has(k)) return false;
    }
    return true;
}

double close_log_return(const SeriesView& s, std::size_t k) {
    return std::log(s.bars[k].close / s.bars[k - 1].close);
}

}  // namespace

std::string to_string(FactorKind kind) {
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) return kn.name;
    }
    return "unknown";
}

FactorKind parse_factor_kind(const std::string& text) {
    for (const auto& kn : kKindNames) {
        if (text == kn.name) return kn.kind;
    }
    throw ConfigError("unknown factor kind '" + text + "'");
}

std::size_t FactorDefinition::lookback() const {
    switch (kind) {
        case FactorKind::Momentum:
        case FactorKind::Reversal:
        case FactorKind::Volatility:
        case FactorKind::Amihud:
        case FactorKind::Rsi:
            return window;
        case FactorKind::VolumeZ:
        case FactorKind::MaRatio:
        case FactorKind::Range:
            return window - 1;
    }
    return window;
}

FactorRegistry FactorRegistry::defaults() {
    FactorRegistry r;
    for (std::size_t w : {5, 10, 21, 63, 126, 252}) {
        r.factors.push_back({"mom_" + std::to_string(w), FactorKind::Momentum, w});
    }
    r.factors.push_back({"vol_21", FactorKind::Volatility, 21});
    r.factors.push_back({"vol_63", FactorKind::Volatility, 63});
    r.factors.push_back({"volume_z_21", FactorKind::VolumeZ, 21});
    r.factors.push_back({"amihud_21", FactorKind::Amihud, 21});
    r.factors.push_back({"rsi_14", FactorKind::Rsi, 14});
    for (std::size_t w : {5, 20, 60}) {
        r.factors.push_back({"ma_ratio_" + std::to_string(w), FactorKind::MaRatio, w});
    }
    r.factors.push_back({"reversal_1", FactorKind::Reversal, 1});
    r.factors.push_back({"range_21", FactorKind::Range, 21});
    return r;
}

FactorRegistry FactorRegistry::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("factor registry: ") + e.what());
    }
    if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array()) {
        throw ConfigError("factor registry needs a 'factors' array");
    }
    FactorRegistry r;
    for (const auto& f : j["factors"]) {
        for (const auto& [key, value] : f.items()) {
            if (key != "name" && key != "kind" && key != "window") {
                throw ConfigError("factor registry: unknown key '" + key + "'");
            }
        }
        FactorDefinition def;
        try {
            def.name = f.at("name").get<std::string>();
            def.kind = parse_factor_kind(f.at("kind").get<std::string>());
            def.window = f.at("window").get<std::size_t>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("factor registry entry: ") + e.what());
        }
        const std::size_t min_window = (def.kind == FactorKind::Volatility) ? 2 : 1;
        if (def.window < min_window) throw ConfigError("factor '" + def.name + "' window too small");
        for (const auto& other : r.factors) {
            if (other.name == def.name) throw ConfigError("duplicate factor name '" + def.name + "'");
        }
        r.factors.push_back(def);
    }
    if (r.factors.empty()) throw ConfigError("factor registry is empty");
    return r;
}

FactorRegistry FactorRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return from_json_text(std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()));
}

std::string FactorRegistry::to_json_text() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : factors) arr.push_back({{"name", f.name}, {"kind", to_string(f.kind)}, {"window", f.window}});
    return nlohmann::json{{"factors", arr}}.dump(2);
}

std::size_t FactorRegistry::max_lookback() const {
    std::size_t m = 0;
    for (const auto& f : factors) m = std::max(m, f.lookback());
    return m;
}

std::optional<double> raw_factor(const FactorDefinition& def, const SeriesView& s, std::size_t t) {
    const std::size_t w = def.window;
    if (!window_present(s, t, def.lookback())) return std::nullopt;
    const auto& b = s.bars;
    switch (def.kind) {
        case FactorKind::Momentum:
            return std::log(b[t].close / b[t - w].close);
        case FactorKind::Reversal:
            return -std::log(b[t].close / b[t - w].close);
        case FactorKind::Volatility: {
            double mean = 0.0;
            for (std::size_t k = t - w + 1; k <= t; ++k) mean += close_log_return(s, k);
            mean /= static_cast<double>(w);
            double ss = 0.0;
            for (std::size_t k = t - w + 1; k <= t; ++k) {
                const double r = close_log_return(s, k) - mean;
                ss += r * r;
            }
            return std::sqrt(ss / static_cast<double>(w - 1));
        }
        case FactorKind::VolumeZ: {
            double mean = 0.0;
            for (std::size_t k = t + 1 - w; k <= t; ++k) mean += std::log1p(b[k].volume);
            mean /= static_cast<double>(w);
            double ss = 0.0;
            for (std::size_t k = t + 1 - w; k <= t; ++k) {
                const double r = std::log1p(b[k].volume) - mean;
                ss += r * r;
            }
            const double sd = w > 1 ? std::sqrt(ss / static_cast<double>(w - 1)) : 0.0;
            return sd > 0.0 ? (std::log1p(b[t].volume) - mean) / sd : 0.0;
        }
        case FactorKind::Amihud: {
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t k = t - w + 1; k <= t; ++k) {
                const double dv = b[k].close * b[k].volume;
                if (dv <= 0.0) continue;
                sum += std::abs(close_log_return(s, k)) / dv;
                ++n;
            }
            if (n == 0) return std::nullopt;
            return 1e6 * sum / static_cast<double>(n);
        }
        case FactorKind::Rsi: {
            double gain = 0.0, loss = 0.0;
            for (std::size_t k = t - w + 1; k <= t; ++k) {
                const double change = b[k].close - b[k - 1].close;
                if (change > 0.0) gain += change;
                else loss -= change;
            }
            return gain + loss > 0.0 ? 100.0 * gain / (gain + loss) : 50.0;
        }
        case FactorKind::MaRatio: {
            double sum = 0.0;
            for (std::size_t k = t + 1 - w; k <= t; ++k) sum += b[k].close;
            return b[t].close / (sum / static_cast<double>(w)) - 1.0;
        }
        case FactorKind::Range: {
            double sum = 0.0;
            for (std::size_t k = t + 1 - w; k <= t; ++k) sum += std::log(b[k].high / b[k].low);
            return sum / static_cast<double>(w);
        }
    }
    return std::nullopt;
}

void standardize_cross_section(std::span<double> values, std::span<const std::uint8_t> mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask[i]) idx.push_back(i);
    }
    auto zero_all = [&] {
        for (std::size_t i : idx) values[i] = 0.0;
    };
    if (idx.size() < 2) {
        zero_all();
        return;
    }
    const double n = static_cast<double>(idx.size());
    std::vector<double> x(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) x[k] = values[idx[k]];

    std::vector<double> z(x.size());
    for (int pass = 0; pass < kMaxWinsorPasses; ++pass) {
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : x) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / (n - 1.0));
        double scale = 0.0;
        for (double v : x) scale = std::max(scale, std::abs(v));
        if (!std::isfinite(sd) || sd <= 1e-12 * scale || !(sd > 1e-300)) {
            zero_all();
            return;
        }
        double worst = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            z[k] = (x[k] - mean) / sd;
            worst = std::max(worst, std::abs(z[k]));
        }
        if (worst <= kWinsorBound * (1.0 + 1e-12)) break;
        const double lo = mean - kWinsorBound * sd;
        const double hi = mean + kWinsorBound * sd;
        for (double& v : x) v = std::clamp(v, lo, hi);
    }
    for (std::size_t k = 0; k < idx.size(); ++k) values[idx[k]] = std::clamp(z[k], -kWinsorBound, kWinsorBound);
}

FactorPanel::FactorPanel(std::vector<Date> calendar, std::vector<std::string> symbols, std::vector<std::string> names)
    : calendar_(std::move(calendar)), symbols_(std::move(symbols)), names_(std::move(names)) {
    values_.assign(calendar_.size() * symbols_.size() * names_.size(), 0.0);
    mask_.assign(values_.size(), 0);
}

bool FactorPanel::complete(std::size_t d, std::size_t s) const {
    const std::size_t base = index(d, s, 0);
    for (std::size_t f = 0; f < names_.size(); ++f) {
        if (!mask_[base + f]) return false;
    }
    return true;
}

void FactorPanel::set(std::size_t d, std::size_t s, std::size_t f, double v, bool ok) {
    values_[index(d, s, f)] = ok ? v : 0.0;
    mask_[index(d, s, f)] = ok ? 1 : 0;
}

std::size_t FactorPanel::date_index(Date date) const {
    auto it = std::lower_bound(calendar_.begin(), calendar_.end(), date);
    if (it == calendar_.end() || *it != date) throw LookupError("date " + date.to_string() + " not in factor panel");
    return static_cast<std::size_t>(it - calendar_.begin());
}

FactorPanel compute_factors(const BarPanel& panel, const FactorRegistry& registry) {
    if (panel.empty() || panel.num_symbols() == 0) throw EmptyInputError("compute_factors: empty bar panel");
    std::vector<std::string> names;
    for (const auto& f : registry.factors) names.push_back(f.name);
    FactorPanel out(panel.calendar(), panel.symbols(), names);
    const std::size_t N = panel.num_symbols();
    std::vector<double> column(N);
    std::vector<std::uint8_t> mask(N);
    for (std::size_t f = 0; f < registry.factors.size(); ++f) {
        const auto& def = registry.factors[f];
        for (std::size_t d = 0; d < panel.num_dates(); ++d) {
            for (std::size_t s = 0; s < N; ++s) {
                const auto v = raw_factor(def, panel.series(s), d);
                column[s] = v.value_or(0.0);
                mask[s] = (v && std::isfinite(*v)) ? 1 : 0;
            }
            standardize_cross_section(column, mask);
            for (std::size_t s = 0; s < N; ++s) out.set(d, s, f, column[s], mask[s] != 0);
        }
    }
    return out;
}

void write_factor_csv(const std::string& path, const FactorPanel& panel) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date,symbol";
    for (const auto& n : panel.factor_names()) out << ',' << n;
    out << '\n';
    for (std::size_t d = 0; d < panel.num_dates(); ++d) {
        for (std::size_t s = 0; s < panel.num_symbols(); ++s) {
            out << panel.calendar()[d].to_string() << ',' << panel.symbols()[s];
            for (std::size_t f = 0; f < panel.num_factors(); ++f) {
                out << ',';
                if (panel.valid(d, s, f)) out << csv::format_double(panel.value(d, s, f));
            }
            out << '\n';
        }
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

FactorPanel read_factor_csv(const std::string& path) {
    const auto lines = csv::read_lines(path);
    if (lines.empty()) throw EmptyInputError("factor file '" + path + "' is empty");
    const auto header = csv::split_line(lines[0]);
    if (header.size() < 3 || header[0] != "date" || header[1] != "symbol") {
        throw ParseError("factor header must start with 'date,symbol'", 1);
    }
    std::vector<std::string> names(header.begin() + 2, header.end());
    struct Row {
        Date date;
        std::string symbol;
        std::vector<std::string> fields;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::vector<Date> calendar;
    std::vector<std::string> symbols;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = csv::split_line(lines[i]);
        if (f.size() != header.size()) throw ParseError("wrong field count", i + 1);
        Row r{Date::parse(f[0]), f[1], std::vector<std::string>(f.begin() + 2, f.end()), i + 1};
        calendar.push_back(r.date);
        symbols.push_back(r.symbol);
        rows.push_back(std::move(r));
    }
    std::sort(calendar.begin(), calendar.end());
    calendar.erase(std::unique(calendar.begin(), calendar.end()), calendar.end());
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    FactorPanel panel(calendar, symbols, names);
    for (const auto& r : rows) {
        const std::size_t d = static_cast<std::size_t>(std::lower_bound(calendar.begin(), calendar.end(), r.date) - calendar.begin());
        const std::size_t s = static_cast<std::size_t>(std::lower_bound(symbols.begin(), symbols.end(), r.symbol) - symbols.begin());
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (r.fields[k].empty()) panel.set(d, s, k, 0.0, false);
            else panel.set(d, s, k, csv::parse_double(r.fields[k], r.line), true);
        }
    }
    return panel;
}

}  // namespace alphafuse::market
