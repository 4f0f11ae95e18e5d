#include "cli/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::cli {

namespace {

nlohmann::ordered_json make_defaults() {
    return nlohmann::ordered_json::parse(R"({
  "seed": 1,
  "paths": {
    "bars": "",
    "news": "",
    "factors": ""
  },
  "universe": {
    "min_median_dollar_volume": 1000000.0,
    "min_price": 1.0,
    "min_history": 250
  },
  "split": {
    "train_end": "",
    "train_fraction": 0.7,
    "gap_days": 10
  },
  "text": {
    "min_count": 10,
    "dim": 400,
    "window": 5,
    "negatives": 5,
    "epochs": 5,
    "lr": 0.025
  },
  "glove": {
    "dim": 32,
    "x_max": 100.0,
    "alpha": 0.75,
    "epochs": 200,
    "lr": 0.05
  },
  "graph": {
    "k": 5
  },
  "model": {
    "ablation": "Full",
    "T": 5,
    "m": 200,
    "hidden": 64,
    "attn_hidden": 32,
    "temporal_hidden": 32,
    "head": "linear",
    "horizon": 5,
    "epochs": 100,
    "lr": 0.001,
    "batch_size": 256,
    "patience": 10,
    "validation_fraction": 0.2,
    "validation": "random",
    "nonneg_tech": false
  },
  "backtest": {
    "simulator": "longshort",
    "holding_days": 5,
    "risk_aversion": 1.0,
    "halflife": 20.0,
    "shrinkage": 0.1,
    "min_history": 20,
    "c_lin": 0.0005,
    "c_quad": 0.0,
    "name_cap": 0.05,
    "gross_cap": 1.0,
    "hedge": true,
    "capital": 50000000.0
  },
  "interpret": {
    "k_emb": 50,
    "error_tail": 0.05,
    "distance_band": 0.01
  },
  "synth": {
    "n_stocks": 50,
    "days": 750,
    "clusters": 5,
    "noise_std": 0.01,
    "cluster_loading": 0.5,
    "news_rate": 0.2,
    "fidelity": 0.9,
    "max_comentions": 3,
    "words_per_article": 24,
    "momentum_beta": 0.002,
    "volatility_beta": -0.002
  }
})");
}

bool same_kind(const nlohmann::json& want, const nlohmann::json& got) {
    if (want.is_boolean()) return got.is_boolean();
    if (want.is_string()) return got.is_string();
    if (want.is_number_unsigned() || want.is_number_integer()) {
        return got.is_number_unsigned() || (got.is_number_integer() && got.get<long long>() >= 0);
    }
    if (want.is_number()) return got.is_number();
    return false;
}

}  // namespace

const nlohmann::ordered_json& RunConfig::defaults() {
    static const nlohmann::ordered_json d = make_defaults();
    return d;
}

RunConfig::RunConfig() : values_(defaults()) {}

void RunConfig::assign(const std::string& section, const std::string& key, const nlohmann::json& value,
                       const std::string& origin) {
    if (section == "seed" && key.empty()) {
        if (!same_kind(values_["seed"], value)) throw ConfigError(origin + ": seed must be a non-negative integer");
        values_["seed"] = value;
        return;
    }
    if (!values_.contains(section) || !values_[section].is_object()) {
        throw ConfigError(origin + ": unknown config section '" + section + "'");
    }
    auto& sec = values_[section];
    if (!sec.contains(key)) throw ConfigError(origin + ": unknown config key '" + section + "." + key + "'");
    if (!same_kind(sec[key], value)) {
        throw ConfigError(origin + ": '" + section + "." + key + "' expects a " + sec[key].type_name() + ", got " +
                          value.type_name());
    }
    sec[key] = value;
}

void RunConfig::merge(const nlohmann::json& overlay, const std::string& origin) {
    if (!overlay.is_object()) throw ConfigError(origin + ": config must be a JSON object");
    for (const auto& [section, body] : overlay.items()) {
        if (section == "seed") {
            assign("seed", "", body, origin);
            continue;
        }
        if (!body.is_object()) throw ConfigError(origin + ": section '" + section + "' must be an object");
        for (const auto& [key, value] : body.items()) assign(section, key, value, origin);
    }
}

void RunConfig::merge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    // relative data paths in a config file are taken relative to that file
    if (j.is_object() && j.contains("paths") && j["paths"].is_object()) {
        const auto base = std::filesystem::path(path).parent_path();
        for (auto& [key, value] : j["paths"].items()) {
            if (value.is_string() && !value.get<std::string>().empty() &&
                std::filesystem::path(value.get<std::string>()).is_relative()) {
                value = (base / value.get<std::string>()).lexically_normal().string();
            }
        }
    }
    merge(j, path);
}

nlohmann::json parse_scalar(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
        return nlohmann::json(text);
    }
}

void RunConfig::merge_environment(const std::vector<std::string>& environment) {
    const std::string prefix = "FCAST_";
    std::vector<std::string> sorted = environment;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& entry : sorted) {
        if (entry.rfind(prefix, 0) != 0) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string name = entry.substr(prefix.size(), eq - prefix.size());
        for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const std::string value = entry.substr(eq + 1);
        const std::string origin = "environment " + entry.substr(0, eq);
        if (name == "seed") {
            assign("seed", "", parse_scalar(value), origin);
            continue;
        }
        const auto sep = name.find("__");
        if (sep == std::string::npos) throw ConfigError(origin + ": expected FCAST_<SECTION>__<KEY>");
        std::string key = name.substr(sep + 2);
        const std::string section = name.substr(0, sep);
        if (section == "model" && key == "t") key = "T";
        const bool wants_string = values_.contains(section) && values_[section].is_object() &&
                                  values_[section].contains(key) && values_[section][key].is_string();
        assign(section, key, wants_string ? nlohmann::json(value) : parse_scalar(value), origin);
    }
}

void RunConfig::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    }
    const std::string section = assignment.substr(0, dot);
    const std::string key = assignment.substr(dot + 1, eq - dot - 1);
    const std::string value = assignment.substr(eq + 1);
    const bool wants_string = values_.contains(section) && values_[section].is_object() &&
                              values_[section].contains(key) && values_[section][key].is_string();
    assign(section, key, wants_string ? nlohmann::json(value) : parse_scalar(value), "--set " + assignment);
}

std::string RunConfig::dump() const {
    return values_.dump(2);
}

std::string RunConfig::str(const std::string& section, const std::string& key) const {
    return values_.at(section).at(key).get<std::string>();
}

double RunConfig::num(const std::string& section, const std::string& key) const {
    return values_.at(section).at(key).get<double>();
}

std::size_t RunConfig::count(const std::string& section, const std::string& key) const {
    return values_.at(section).at(key).get<std::size_t>();
}

bool RunConfig::flag(const std::string& section, const std::string& key) const {
    return values_.at(section).at(key).get<bool>();
}

std::uint64_t RunConfig::seed() const {
    return values_.at("seed").get<std::uint64_t>();
}

}  // namespace alphafuse::cli
