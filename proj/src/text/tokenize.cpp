#include "alphafuse/text/tokenize.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace alphafuse::text {

std::vector<std::string> whitespace_tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a", "an", "and", "are", "as", "at", "be", "been", "but", "by", "for", "from", "had", "has",
        "have", "he", "her", "his", "i", "if", "in", "into", "is", "it", "its", "no", "not", "of",
        "on", "or", "our", "she", "so", "than", "that", "the", "their", "them", "then", "there",
        "these", "they", "this", "to", "was", "we", "were", "which", "while", "who", "will", "with",
        "would", "you", "your"};
    return words;
}

bool is_url(std::string_view token) {
    auto starts = [&](std::string_view p) {
        if (token.size() < p.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(token[i])) != p[i]) return false;
        }
        return true;
    };
    return starts("http://") || starts("https://") || starts("www.") || starts("ftp://");
}

std::vector<std::string> preprocess(std::string_view raw, const PreprocessOptions& options) {
    std::vector<std::string> out;
    for (const std::string& token : options.tokenizer(raw)) {
        if (is_url(token)) continue;
        std::string cleaned;
        cleaned.reserve(token.size());
        for (char ch : token) {
            const auto u = static_cast<unsigned char>(ch);
            if (u < 128 && (std::ispunct(u) || std::isspace(u))) continue;
            cleaned.push_back(options.lowercase && u < 128 ? static_cast<char>(std::tolower(u)) : ch);
        }
        if (cleaned.empty() || options.stopwords.count(cleaned)) continue;
        out.push_back(std::move(cleaned));
    }
    return out;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& corpus, std::uint64_t min_count) {
    std::map<std::string, std::uint64_t> freq;
    for (const auto& doc : corpus) {
        for (const auto& w : doc) ++freq[w];
    }
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [w, c] : freq) {
        if (c >= min_count) kept.emplace_back(w, c);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> words;
    std::vector<std::uint64_t> counts;
    for (auto& [w, c] : kept) {
        words.push_back(w);
        counts.push_back(c);
    }
    return from_words(std::move(words), std::move(counts));
}

Vocabulary Vocabulary::from_words(std::vector<std::string> words, std::vector<std::uint64_t> counts) {
    Vocabulary v;
    v.words_ = std::move(words);
    v.counts_ = std::move(counts);
    v.counts_.resize(v.words_.size(), 1);
    for (std::size_t i = 0; i < v.words_.size(); ++i) v.index_.emplace(v.words_[i], i);
    return v;
}

long Vocabulary::find(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

}  // namespace alphafuse::text
