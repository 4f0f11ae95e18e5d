#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace alphafuse::cli {

// Layered run configuration. Later layers win:
//   built-in defaults < --config file < FCAST_<SECTION>__<KEY> environment < --set / --seed flags
// Every layer may only name keys that exist in the defaults, with a matching type.
class RunConfig {
public:
    RunConfig();

    static const nlohmann::ordered_json& defaults();

    // Merges a JSON object; throws ConfigError on unknown keys or type mismatches.
    void merge(const nlohmann::json& overlay, const std::string& origin);
    void merge_file(const std::string& path);
    // Scans an environment block (KEY=VALUE strings) for the FCAST_ prefix.
    void merge_environment(const std::vector<std::string>& environment);
    // "section.key=value"; the value is read as JSON, falling back to a plain string.
    void set(const std::string& assignment);

    const nlohmann::ordered_json& json() const noexcept { return values_; }
    std::string dump() const;

    std::string str(const std::string& section, const std::string& key) const;
    double num(const std::string& section, const std::string& key) const;
    std::size_t count(const std::string& section, const std::string& key) const;
    bool flag(const std::string& section, const std::string& key) const;
    std::uint64_t seed() const;

private:
    void assign(const std::string& section, const std::string& key, const nlohmann::json& value, const std::string& origin);
    nlohmann::ordered_json values_;
};

nlohmann::json parse_scalar(const std::string& text);

}  // namespace alphafuse::cli
