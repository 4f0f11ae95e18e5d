#pragma once

#include <cstdint>
#include <string>

namespace alphafuse::model {

enum class HeadMode { Linear, Softmax };

// Random: a random fraction of samples. Chronological: the latest anchors, with
// training samples whose label window reaches into them dropped.
enum class ValidationMode { Random, Chronological };
std::string to_string(ValidationMode mode);
ValidationMode parse_validation_mode(const std::string& text);

std::string to_string(HeadMode mode);
HeadMode parse_head_mode(const std::string& text);

struct ModuleFlags {
    bool graph = true;
    bool tech = true;
    bool news = true;

    friend bool operator==(const ModuleFlags&, const ModuleFlags&) = default;
};

inline constexpr std::size_t kMaxTechDim = 4096;

struct ModelConfig {
    std::size_t T = 5;             // lookback days
    std::size_t d = 32;            // stock embedding width
    std::size_t k = 5;             // graph neighbors
    std::size_t l = 0;             // factor count, 0 = taken from the data
    std::size_t m = 200;           // technical embedding width
    std::size_t d_w = 400;         // news vector width
    std::size_t hidden = 64;       // LSTM width per direction
    std::size_t attn_hidden = 32;  // stock attention score width
    std::size_t temporal_hidden = 32;
    ModuleFlags modules;
    HeadMode head = HeadMode::Linear;
    std::size_t head_outputs = 1;
    std::size_t horizon = 5;

    std::size_t epochs = 100;
    double lr = 1e-3;
    std::size_t batch_size = 256;
    std::size_t patience = 10;
    double validation_fraction = 0.2;
    ValidationMode validation = ValidationMode::Random;
    // Train the technical layer as ReLU(W) so its rows are non-negative.
    bool nonneg_tech = false;
    bool fine_tune_embeddings = true;
    std::uint64_t seed = 1;

    std::size_t input_dim() const;
    // Throws ConfigError on inconsistent settings.
    void validate() const;
};

// "News", "Tech", "Tech+News", "Graph+Tech", "Graph+News", "Full". Case and spaces
// are ignored and a "-BiLSTM" suffix is accepted. Only the module flags change.
ModelConfig ablation_config(const std::string& name, const ModelConfig& base = {});

}  // namespace alphafuse::model
