#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "alphafuse/common/embedding_io.hpp"
#include "alphafuse/text/tokenize.hpp"

namespace alphafuse::text {

struct WordEmbeddingSet {
    Vocabulary vocab;
    std::size_t dim = 0;
    std::vector<double> vectors;  // vocab.size() x dim

    std::span<const double> vector(std::size_t i) const { return {vectors.data() + i * dim, dim}; }
    EmbeddingTable to_table() const;
    static WordEmbeddingSet from_table(const EmbeddingTable& table);
};

struct CbowConfig {
    std::size_t dim = 400;
    std::size_t window = 5;
    std::size_t negatives = 5;
    std::size_t epochs = 5;
    double lr = 0.025;
    std::uint64_t seed = 1;
};

struct CbowResult {
    WordEmbeddingSet embeddings;
    // Mean negative-sampling loss per center word, one entry per epoch.
    std::vector<double> epoch_loss;
};

// CBOW with negative sampling (word2vec style): random reduced window, unigram^0.75
// noise table, linear learning-rate decay, no subsampling. Out-of-vocabulary tokens
// are dropped from the sentences. Throws ConfigError when the vocabulary has fewer
// than negatives + 1 words.
CbowResult train_cbow(const std::vector<std::vector<std::string>>& corpus, const Vocabulary& vocab,
                      const CbowConfig& config);

}  // namespace alphafuse::text
