#include "alphafuse/text/news.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <unordered_map>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::text {

std::vector<NewsArticle> parse_news_ndjson(std::string_view text, const PreprocessOptions& options) {
    std::vector<NewsArticle> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) {
            if (end == text.size()) break;
            continue;
        }
        NewsArticle a;
        try {
            const auto j = nlohmann::json::parse(line);
            a.id = j.at("id").get<std::string>();
            a.date = Date::parse(j.at("date").get<std::string>());
            a.symbols = j.at("symbols").get<std::vector<std::string>>();
            a.text = j.at("text").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad news record: ") + e.what(), line_no);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no);
        }
        a.tokens = preprocess(a.text, options);
        out.push_back(std::move(a));
        if (end == text.size()) break;
    }
    return out;
}

std::vector<NewsArticle> load_news(const std::string& path, const PreprocessOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_news_ndjson(text, options);
}

std::string to_ndjson(const NewsArticle& article) {
    nlohmann::ordered_json j;
    j["id"] = article.id;
    j["date"] = article.date.to_string();
    j["symbols"] = article.symbols;
    j["text"] = article.text;
    return j.dump();
}

std::vector<std::vector<std::string>> token_corpus(const std::vector<NewsArticle>& articles) {
    std::vector<std::vector<std::string>> corpus;
    corpus.reserve(articles.size());
    for (const auto& a : articles) corpus.push_back(a.tokens);
    return corpus;
}

NewsVector news_vector(const std::vector<std::string>& tokens, const WordEmbeddingSet& emb) {
    NewsVector out;
    out.values.assign(emb.dim, 0.0);
    for (const auto& t : tokens) {
        const long id = emb.vocab.find(t);
        if (id < 0) continue;
        const auto v = emb.vector(static_cast<std::size_t>(id));
        for (std::size_t k = 0; k < emb.dim; ++k) out.values[k] += v[k];
        ++out.in_vocab;
    }
    if (out.in_vocab > 0) {
        for (double& x : out.values) x /= static_cast<double>(out.in_vocab);
    }
    return out;
}

DailyNewsPanel::DailyNewsPanel(std::vector<Date> calendar, std::vector<std::string> symbols, std::size_t dim)
    : calendar_(std::move(calendar)), symbols_(std::move(symbols)), dim_(dim) {
    const std::size_t cells = calendar_.size() * symbols_.size();
    values_.assign(cells * dim_, 0.0);
    counts_.assign(cells, 0);
    ids_.resize(cells);
}

DailyNewsPanel daily_stock_news_vectors(const std::vector<NewsArticle>& articles, const WordEmbeddingSet& emb,
                                        const std::vector<std::string>& symbols, const std::vector<Date>& calendar) {
    DailyNewsPanel panel(calendar, symbols, emb.dim);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t s = 0; s < symbols.size(); ++s) index.emplace(symbols[s], s);
    const std::size_t N = symbols.size();

    for (const auto& a : articles) {
        auto it = std::upper_bound(calendar.begin(), calendar.end(), a.date);
        if (it == calendar.end()) {
            ++panel.unmapped_articles;
            continue;
        }
        const std::size_t d = static_cast<std::size_t>(it - calendar.begin());
        const NewsVector v = news_vector(a.tokens, emb);
        if (v.flagged()) {
            ++panel.flagged_articles;
            continue;
        }
        std::vector<std::size_t> targets;
        for (const auto& sym : a.symbols) {
            auto f = index.find(sym);
            if (f == index.end()) {
                ++panel.unknown_symbol_tags;
                continue;
            }
            if (std::find(targets.begin(), targets.end(), f->second) == targets.end()) targets.push_back(f->second);
        }
        for (std::size_t s : targets) {
            const std::size_t cell = d * N + s;
            double* dst = panel.values_.data() + cell * panel.dim_;
            for (std::size_t k = 0; k < panel.dim_; ++k) dst[k] += v.values[k];
            ++panel.counts_[cell];
            panel.ids_[cell].push_back(a.id);
        }
    }
    for (std::size_t cell = 0; cell < panel.counts_.size(); ++cell) {
        if (panel.counts_[cell] < 2) continue;
        double* dst = panel.values_.data() + cell * panel.dim_;
        for (std::size_t k = 0; k < panel.dim_; ++k) dst[k] /= static_cast<double>(panel.counts_[cell]);
    }
    return panel;
}

}  // namespace alphafuse::text
