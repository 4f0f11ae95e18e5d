#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "alphafuse/common/errors.hpp"
#include "alphafuse/text/cbow.hpp"
#include "alphafuse/text/cooccurrence.hpp"
#include "alphafuse/text/news.hpp"
#include "alphafuse/text/tokenize.hpp"
#include "helpers.hpp"

using namespace alphafuse;
using namespace alphafuse::text;

namespace {

WordEmbeddingSet toy_embeddings() {
    WordEmbeddingSet e;
    e.vocab = Vocabulary::from_words({"alpha", "beta", "gamma"}, {5, 4, 3});
    e.dim = 2;
    e.vectors = {1.0, 2.0, 3.0, -4.0, 0.5, 0.5};
    return e;
}

NewsArticle article(const std::string& id, Date d, std::vector<std::string> syms, std::vector<std::string> tokens) {
    NewsArticle a;
    a.id = id;
    a.date = d;
    a.symbols = std::move(syms);
    a.tokens = std::move(tokens);
    return a;
}

std::vector<std::vector<std::string>> topic_corpus(std::size_t docs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 9);
    std::vector<std::vector<std::string>> corpus;
    for (std::size_t i = 0; i < docs; ++i) {
        const char topic = (i % 2 == 0) ? 'a' : 'b';
        std::vector<std::string> doc;
        for (int k = 0; k < 12; ++k) doc.push_back(std::string(1, topic) + std::to_string(pick(rng)));
        corpus.push_back(doc);
    }
    return corpus;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
}

}  // namespace

TEST(Preprocess, PunctuationAndUrlOnlyIsEmpty) {
    EXPECT_TRUE(preprocess("!!! ... , https://example.com/x?y=1 ;").empty());
    EXPECT_TRUE(preprocess("www.example.org").empty());
}

TEST(Preprocess, WhitespaceTokenizer) {
    EXPECT_EQ(whitespace_tokenize("a b a"), (std::vector<std::string>{"a", "b", "a"}));
    EXPECT_EQ(whitespace_tokenize("  a\tb\n a  "), (std::vector<std::string>{"a", "b", "a"}));
}

TEST(Preprocess, DropsStopwordsAndLowercases) {
    const auto t = preprocess("The Profit, of ACME rose!");
    EXPECT_EQ(t, (std::vector<std::string>{"profit", "acme", "rose"}));
    for (const auto& tok : t) EXPECT_EQ(default_stopwords().count(tok), 0u);
}

TEST(Preprocess, PluggableTokenizer) {
    PreprocessOptions opt;
    opt.tokenizer = [](std::string_view s) {
        std::vector<std::string> out;
        for (char c : s) out.emplace_back(1, c);
        return out;
    };
    opt.stopwords = {};
    EXPECT_EQ(preprocess("xy", opt), (std::vector<std::string>{"x", "y"}));
}

TEST(Vocabulary, MinCountThreshold) {
    std::vector<std::vector<std::string>> corpus;
    for (int i = 0; i < 9; ++i) corpus.push_back({"rare", "common"});
    corpus.push_back({"common"});
    const auto v = Vocabulary::build(corpus, kDefaultMinCount);
    EXPECT_EQ(v.find("rare"), -1);
    EXPECT_EQ(v.find("common"), 0);
    EXPECT_EQ(v.counts()[0], 10u);
    corpus.push_back({"rare"});
    EXPECT_GE(Vocabulary::build(corpus, kDefaultMinCount).find("rare"), 0);
}

TEST(Cbow, DeterministicPerSeed) {
    const auto corpus = topic_corpus(60, 1);
    const auto vocab = Vocabulary::build(corpus, 1);
    CbowConfig c;
    c.dim = 8;
    c.epochs = 2;
    c.seed = 5;
    const auto a = train_cbow(corpus, vocab, c);
    const auto b = train_cbow(corpus, vocab, c);
    EXPECT_EQ(a.embeddings.vectors, b.embeddings.vectors);
    c.seed = 6;
    EXPECT_NE(train_cbow(corpus, vocab, c).embeddings.vectors, a.embeddings.vectors);
}

TEST(Cbow, TopicsSeparateAndLossDecreases) {
    const auto corpus = topic_corpus(400, 2);
    const auto vocab = Vocabulary::build(corpus, 1);
    CbowConfig c;
    c.dim = 16;
    c.epochs = 8;
    c.window = 3;
    c.negatives = 5;
    c.seed = 3;
    const auto r = train_cbow(corpus, vocab, c);
    ASSERT_EQ(r.epoch_loss.size(), 8u);
    EXPECT_LT(r.epoch_loss.back(), r.epoch_loss.front());
    double within = 0, cross = 0;
    std::size_t nw = 0, nc = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        for (std::size_t j = i + 1; j < vocab.size(); ++j) {
            const double cs = cosine(r.embeddings.vector(i), r.embeddings.vector(j));
            if (vocab.words()[i][0] == vocab.words()[j][0]) {
                within += cs;
                ++nw;
            } else {
                cross += cs;
                ++nc;
            }
        }
    }
    EXPECT_GT(within / nw, cross / nc);
}

TEST(Cbow, SmallVocabularyIsConfigError) {
    const std::vector<std::vector<std::string>> corpus = {{"a", "b", "c"}};
    const auto vocab = Vocabulary::build(corpus, 1);
    CbowConfig c;
    c.negatives = 5;
    EXPECT_THROW(train_cbow(corpus, vocab, c), ConfigError);
}

TEST(Cbow, EmbeddingTableRoundTrip) {
    testing_util::TempDir dir;
    const auto e = toy_embeddings();
    write_embedding_table(dir.file("w.vec"), e.to_table());
    const auto back = WordEmbeddingSet::from_table(read_embedding_table(dir.file("w.vec")));
    EXPECT_EQ(back.vocab.words(), e.vocab.words());
    EXPECT_EQ(back.vectors, e.vectors);
}

TEST(NewsVector, MeanOfInVocabularyTokens) {
    const auto e = toy_embeddings();
    auto v = news_vector({"beta"}, e);
    EXPECT_EQ(v.values, (std::vector<double>{3.0, -4.0}));
    v = news_vector({"alpha", "beta", "zzz"}, e);
    EXPECT_EQ(v.values, (std::vector<double>{2.0, -1.0}));
    EXPECT_EQ(v.in_vocab, 2u);
    v = news_vector({"zzz", "yyy"}, e);
    EXPECT_EQ(v.values, (std::vector<double>{0.0, 0.0}));
    EXPECT_TRUE(v.flagged());
}

TEST(NewsVector, NormBoundedByLargestTokenVector) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> z;
    WordEmbeddingSet e;
    std::vector<std::string> words;
    for (int i = 0; i < 30; ++i) words.push_back("w" + std::to_string(i));
    e.vocab = Vocabulary::from_words(words, std::vector<std::uint64_t>(30, 1));
    e.dim = 5;
    e.vectors.resize(150);
    for (auto& x : e.vectors) x = z(rng);
    double max_norm = 0;
    for (int i = 0; i < 30; ++i) {
        double n = 0;
        for (double x : e.vector(i)) n += x * x;
        max_norm = std::max(max_norm, std::sqrt(n));
    }
    std::uniform_int_distribution<int> pick(0, 29);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::string> toks;
        for (int k = 0; k < 7; ++k) toks.push_back(words[pick(rng)]);
        double n = 0;
        for (double x : news_vector(toks, e).values) n += x * x;
        EXPECT_LE(std::sqrt(n), max_norm + 1e-12);
    }
}

TEST(DailyNews, NextTradingDayMappingAndMean) {
    const auto e = toy_embeddings();
    const auto cal = testing_util::weekdays(Date::from_ymd(2021, 3, 1), 6);
    std::vector<NewsArticle> arts = {
        article("a1", cal[1], {"AAA"}, {"alpha"}),
        article("a2", cal[2], {"AAA"}, {"alpha"}),
        article("a3", cal[2], {"AAA"}, {"beta"}),
        article("a4", cal[2], {"AAA", "BBB"}, {"gamma"}),
        article("a5", cal[3], {"ZZZ"}, {"alpha"}),
        article("a6", cal[3], {"BBB"}, {"nothing"}),
    };
    const auto p = daily_stock_news_vectors(arts, e, {"AAA", "BBB"}, cal);
    // a1 (dated cal[1]) only feeds day cal[2]
    EXPECT_EQ(p.article_count(1, 0), 0u);
    EXPECT_EQ(p.article_count(2, 0), 1u);
    EXPECT_EQ(std::vector<double>(p.vector(2, 0).begin(), p.vector(2, 0).end()), (std::vector<double>{1.0, 2.0}));
    ASSERT_EQ(p.article_count(3, 0), 3u);
    const double want0 = (1.0 + 3.0 + 0.5) / 3.0, want1 = (2.0 - 4.0 + 0.5) / 3.0;
    EXPECT_NEAR(p.vector(3, 0)[0], want0, 1e-15);
    EXPECT_NEAR(p.vector(3, 0)[1], want1, 1e-15);
    EXPECT_EQ(p.article_ids(3, 0), (std::vector<std::string>{"a2", "a3", "a4"}));
    EXPECT_EQ(p.article_count(4, 1), 0u);
    EXPECT_EQ(p.vector(4, 1)[0], 0.0);
    EXPECT_EQ(p.unknown_symbol_tags, 1u);
    EXPECT_EQ(p.flagged_articles, 1u);
}

TEST(DailyNews, DeletingLaterArticlesLeavesEarlierDaysUnchanged) {
    const auto e = toy_embeddings();
    const auto cal = testing_util::weekdays(Date::from_ymd(2021, 3, 1), 20);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> day(0, 19), sym(0, 2), word(0, 2);
    const std::vector<std::string> syms = {"AAA", "BBB", "CCC"};
    const std::vector<std::string> words = {"alpha", "beta", "gamma"};
    std::vector<NewsArticle> arts;
    for (int i = 0; i < 80; ++i) {
        arts.push_back(article("n" + std::to_string(i), cal[day(rng)].plus_days(day(rng) % 3),
                               {syms[sym(rng)], syms[sym(rng)]}, {words[word(rng)], words[word(rng)]}));
    }
    const auto full = daily_stock_news_vectors(arts, e, syms, cal);
    for (std::size_t t : {5u, 11u, 17u}) {
        std::vector<NewsArticle> kept;
        for (const auto& a : arts) {
            if (a.date < cal[t]) kept.push_back(a);
        }
        const auto cut = daily_stock_news_vectors(kept, e, syms, cal);
        for (std::size_t d = 0; d <= t; ++d) {
            for (std::size_t s = 0; s < 3; ++s) {
                EXPECT_EQ(cut.article_count(d, s), full.article_count(d, s));
                for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(cut.vector(d, s)[k], full.vector(d, s)[k]);
            }
        }
    }
}

TEST(NewsFile, ParsesNdjsonAndReportsBadLine) {
    const std::string good =
        R"({"id":"x1","date":"2021-03-01","symbols":["AAA","BBB"],"text":"Profit rose http://x.com"})"
        "\n"
        R"({"id":"x2","date":"2021-03-02","symbols":[],"text":""})"
        "\n";
    const auto arts = parse_news_ndjson(good);
    ASSERT_EQ(arts.size(), 2u);
    EXPECT_EQ(arts[0].tokens, (std::vector<std::string>{"profit", "rose"}));
    EXPECT_TRUE(arts[1].symbols.empty());
    try {
        parse_news_ndjson(good + "{\"id\":\"x3\",\"date\":\"bad\"}\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    const auto again = parse_news_ndjson(to_ndjson(arts[0]) + "\n");
    EXPECT_EQ(again[0].symbols, arts[0].symbols);
    EXPECT_EQ(again[0].tokens, arts[0].tokens);
}

TEST(Cooccurrence, ExamplesAndBruteForce) {
    const Date d = Date::from_ymd(2021, 1, 4);
    const std::vector<std::string> syms = {"A", "B", "C", "D"};
    auto X = build_cooccurrence({article("1", d, {"A", "B", "C"}, {})}, syms);
    EXPECT_EQ(X.at(0, 1), 1u);
    EXPECT_EQ(X.at(0, 2), 1u);
    EXPECT_EQ(X.at(1, 2), 1u);
    EXPECT_EQ(X.at(2, 1), 1u);
    EXPECT_EQ(X.at(0, 3), 0u);
    X = build_cooccurrence({article("1", d, {"A"}, {})}, syms);
    EXPECT_EQ(X.nonzero_pairs(), 0u);

    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> n(0, 4), s(0, 3);
    std::vector<NewsArticle> arts;
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> tags;
        for (int k = n(rng); k > 0; --k) {
            const auto& t = syms[s(rng)];
            if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
        }
        arts.push_back(article(std::to_string(i), d, tags, {}));
    }
    const auto Y = build_cooccurrence(arts, syms);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(Y.at(i, i), 0u);
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            std::uint64_t want = 0;
            for (const auto& a : arts) {
                const bool hi = std::find(a.symbols.begin(), a.symbols.end(), syms[i]) != a.symbols.end();
                const bool hj = std::find(a.symbols.begin(), a.symbols.end(), syms[j]) != a.symbols.end();
                want += (hi && hj) ? 1 : 0;
            }
            EXPECT_EQ(Y.at(i, j), want);
            EXPECT_EQ(Y.at(i, j), Y.at(j, i));
        }
    }
    testing_util::TempDir dir;
    write_cooccurrence_csv(dir.file("x.csv"), Y);
    const auto Z = read_cooccurrence_csv(dir.file("x.csv"), syms);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(Z.at(i, j), Y.at(i, j));
    }
}

TEST(Cooccurrence, DateWindowRestrictsArticles) {
    const std::vector<std::string> syms = {"A", "B"};
    const Date d1 = Date::from_ymd(2021, 1, 4), d2 = Date::from_ymd(2021, 6, 1);
    const auto X = build_cooccurrence({article("1", d1, {"A", "B"}, {}), article("2", d2, {"A", "B"}, {})}, syms,
                                      std::nullopt, Date::from_ymd(2021, 3, 1));
    EXPECT_EQ(X.at(0, 1), 1u);
}
