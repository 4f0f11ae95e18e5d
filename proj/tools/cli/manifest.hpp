#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace alphafuse::cli {

// Per-command run record written to <out>/manifests/<command>.json. Paths are stored
// exactly as given (relative to the working directory); nothing time-dependent is kept.
class Manifest {
public:
    Manifest(std::string command, const RunConfig& config);

    void input(const std::string& path);
    // Registers a file the command is about to write; it is deleted if the command fails.
    const std::string& output(const std::string& path);
    void trace(const std::string& name, const std::vector<double>& values);
    nlohmann::ordered_json& notes() { return notes_; }

    // Hashes inputs and outputs and writes the manifest into `out_dir`; returns its path.
    std::string write(const std::string& out_dir);
    // Deletes every registered output.
    void discard() const;

private:
    std::string command_;
    nlohmann::ordered_json config_;
    std::uint64_t seed_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    nlohmann::ordered_json traces_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json notes_ = nlohmann::ordered_json::object();
};

}  // namespace alphafuse::cli
