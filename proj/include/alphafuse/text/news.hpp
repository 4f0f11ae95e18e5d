#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alphafuse/common/date.hpp"
#include "alphafuse/text/cbow.hpp"
#include "alphafuse/text/tokenize.hpp"

namespace alphafuse::text {

struct NewsArticle {
    std::string id;
    Date date;
    std::vector<std::string> symbols;
    std::string text;
    std::vector<std::string> tokens;
};

// One JSON object per line: {"id", "date", "symbols", "text"}. Tokens are filled by
// `preprocess`. Blank lines are skipped; malformed lines raise ParseError.
std::vector<NewsArticle> parse_news_ndjson(std::string_view text, const PreprocessOptions& options = {});
std::vector<NewsArticle> load_news(const std::string& path, const PreprocessOptions& options = {});
std::string to_ndjson(const NewsArticle& article);

std::vector<std::vector<std::string>> token_corpus(const std::vector<NewsArticle>& articles);

struct NewsVector {
    std::vector<double> values;
    std::size_t in_vocab = 0;
    // True when no token was in the vocabulary; values are then all zero.
    bool flagged() const noexcept { return in_vocab == 0; }
};

NewsVector news_vector(const std::vector<std::string>& tokens, const WordEmbeddingSet& emb);

// Per (trading day, stock) mean of article vectors. An article dated D is usable
// from the first trading day strictly after D.
class DailyNewsPanel {
public:
    DailyNewsPanel() = default;
    DailyNewsPanel(std::vector<Date> calendar, std::vector<std::string> symbols, std::size_t dim);

    const std::vector<Date>& calendar() const noexcept { return calendar_; }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> vector(std::size_t d, std::size_t s) const {
        return {values_.data() + (d * symbols_.size() + s) * dim_, dim_};
    }
    std::size_t article_count(std::size_t d, std::size_t s) const { return counts_[d * symbols_.size() + s]; }
    const std::vector<std::string>& article_ids(std::size_t d, std::size_t s) const {
        return ids_[d * symbols_.size() + s];
    }

    // Tags naming a symbol outside the panel.
    std::size_t unknown_symbol_tags = 0;
    // Articles with no in-vocabulary token; excluded from the means.
    std::size_t flagged_articles = 0;
    // Articles dated on or after the last trading day.
    std::size_t unmapped_articles = 0;

    friend DailyNewsPanel daily_stock_news_vectors(const std::vector<NewsArticle>&, const WordEmbeddingSet&,
                                                   const std::vector<std::string>&, const std::vector<Date>&);

private:
    std::vector<Date> calendar_;
    std::vector<std::string> symbols_;
    std::size_t dim_ = 0;
    std::vector<double> values_;
    std::vector<std::uint32_t> counts_;
    std::vector<std::vector<std::string>> ids_;
};

DailyNewsPanel daily_stock_news_vectors(const std::vector<NewsArticle>& articles, const WordEmbeddingSet& emb,
                                        const std::vector<std::string>& symbols, const std::vector<Date>& calendar);

}  // namespace alphafuse::text
