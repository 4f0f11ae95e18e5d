#include "cli/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "alphafuse/common/errors.hpp"
#include "alphafuse/common/hash.hpp"

namespace alphafuse::cli {

Manifest::Manifest(std::string command, const RunConfig& config)
    : command_(std::move(command)), config_(config.json()), seed_(config.seed()) {}

void Manifest::input(const std::string& path) {
    if (std::find(inputs_.begin(), inputs_.end(), path) == inputs_.end()) inputs_.push_back(path);
}

const std::string& Manifest::output(const std::string& path) {
    auto it = std::find(outputs_.begin(), outputs_.end(), path);
    if (it != outputs_.end()) return *it;
    outputs_.push_back(path);
    return outputs_.back();
}

void Manifest::trace(const std::string& name, const std::vector<double>& values) {
    traces_[name] = values;
}

std::string Manifest::write(const std::string& out_dir) {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["seed"] = seed_;
    j["config"] = config_;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& p : inputs_) in[p] = sha256_file(p);
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& p : outputs_) out[p] = sha256_file(p);
    j["inputs"] = in;
    j["outputs"] = out;
    j["loss_traces"] = traces_;
    j["notes"] = notes_;
    const std::string dir = out_dir + "/manifests";
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + command_ + ".json";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed for '" + path + "'");
    return path;
}

void Manifest::discard() const {
    std::error_code ec;
    for (const auto& p : outputs_) std::filesystem::remove(p, ec);
}

}  // namespace alphafuse::cli
