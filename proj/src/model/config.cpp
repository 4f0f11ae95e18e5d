#include "alphafuse/model/config.hpp"

#include <algorithm>
#include <cctype>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::model {

std::string to_string(HeadMode mode) {
    return mode == HeadMode::Linear ? "linear" : "softmax";
}

HeadMode parse_head_mode(const std::string& text) {
    if (text == "linear") return HeadMode::Linear;
    if (text == "softmax") return HeadMode::Softmax;
    throw ConfigError("unknown head mode '" + text + "'");
}

std::size_t ModelConfig::input_dim() const {
    return (modules.graph ? d : 0) + (modules.tech ? m : 0) + (modules.news ? d_w : 0);
}

std::string to_string(ValidationMode mode) {
    return mode == ValidationMode::Random ? "random" : "chronological";
}

ValidationMode parse_validation_mode(const std::string& text) {
    if (text == "random") return ValidationMode::Random;
    if (text == "chronological") return ValidationMode::Chronological;
    throw ConfigError("unknown validation mode '" + text + "' (expected random or chronological)");
}

void ModelConfig::validate() const {
    if (T < 1) throw ConfigError("model: T must be at least 1");
    if (!modules.graph && !modules.tech && !modules.news) throw ConfigError("model: no input module enabled");
    if (m > kMaxTechDim) throw ConfigError("model: m exceeds " + std::to_string(kMaxTechDim));
    if (modules.graph && (d == 0 || k == 0 || attn_hidden == 0)) throw ConfigError("model: graph module needs d, k, attn_hidden > 0");
    if (modules.tech && m == 0) throw ConfigError("model: tech module needs m > 0");
    if (modules.news && d_w == 0) throw ConfigError("model: news module needs d_w > 0");
    if (hidden == 0 || temporal_hidden == 0) throw ConfigError("model: hidden sizes must be positive");
    if (head_outputs == 0) throw ConfigError("model: head_outputs must be positive");
    if (head == HeadMode::Softmax && head_outputs < 2) {
        throw ConfigError("model: softmax head over one output is constant");
    }
    if (horizon == 0) throw ConfigError("model: horizon must be positive");
    if (!(lr > 0.0)) throw ConfigError("model: lr must be positive");
    if (batch_size == 0) throw ConfigError("model: batch_size must be positive");
    if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
        throw ConfigError("model: validation_fraction must lie in [0, 1)");
    }
}

ModelConfig ablation_config(const std::string& name, const ModelConfig& base) {
    std::string key;
    for (char ch : name) {
        if (!std::isspace(static_cast<unsigned char>(ch))) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    const std::string suffix = "-bilstm";
    if (key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
        key.resize(key.size() - suffix.size());
    }
    ModelConfig cfg = base;
    if (key == "news") cfg.modules = {false, false, true};
    else if (key == "tech") cfg.modules = {false, true, false};
    else if (key == "tech+news") cfg.modules = {false, true, true};
    else if (key == "graph+tech") cfg.modules = {true, true, false};
    else if (key == "graph+news") cfg.modules = {true, false, true};
    else if (key == "full") cfg.modules = {true, true, true};
    else throw ConfigError("unknown ablation '" + name + "'");
    return cfg;
}

}  // namespace alphafuse::model
