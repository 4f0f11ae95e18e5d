#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace alphafuse::text {

// Splits raw text into candidate tokens. Swappable, e.g. for a word segmenter.
using Tokenizer = std::function<std::vector<std::string>(std::string_view)>;

std::vector<std::string> whitespace_tokenize(std::string_view text);

// Small English stopword list.
const std::unordered_set<std::string>& default_stopwords();

struct PreprocessOptions {
    Tokenizer tokenizer = whitespace_tokenize;
    std::unordered_set<std::string> stopwords = default_stopwords();
    bool lowercase = true;
};

bool is_url(std::string_view token);

// Tokenize, drop URLs, strip ASCII punctuation, lowercase, drop stopwords and empties.
std::vector<std::string> preprocess(std::string_view raw, const PreprocessOptions& options = {});

class Vocabulary {
public:
    Vocabulary() = default;
    // Words with frequency >= min_count, ordered by descending count then text.
    static Vocabulary build(const std::vector<std::vector<std::string>>& corpus, std::uint64_t min_count);
    static Vocabulary from_words(std::vector<std::string> words, std::vector<std::uint64_t> counts);

    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }
    const std::vector<std::string>& words() const noexcept { return words_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    // -1 when absent.
    long find(const std::string& word) const;

private:
    std::vector<std::string> words_;
    std::vector<std::uint64_t> counts_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline constexpr std::uint64_t kDefaultMinCount = 10;

}  // namespace alphafuse::text
