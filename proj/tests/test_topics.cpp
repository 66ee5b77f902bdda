#include <doctest.h>

#include <cmath>
#include <random>

#include "litsynth/tfidf.hpp"
#include "litsynth/topics.hpp"
#include "oracles.hpp"

using namespace litsynth;

namespace {

const TokenizerOptions kNoStop{nullptr, 1};

std::vector<std::pair<std::string, std::string>> planted_corpus() {
    static const std::vector<std::string> lm{"language", "token", "transformer", "perplexity", "vocabulary",
                                             "decoder",  "corpus", "embedding", "softmax",    "wikitext"};
    static const std::vector<std::string> music{"midi", "piano", "melody", "chord", "rhythm",
                                                "tempo", "note", "harmony", "score", "orchestra"};
    std::mt19937_64 rng(3);
    std::vector<std::pair<std::string, std::string>> docs;
    for (int i = 0; i < 20; ++i) {
        const auto& pool = i < 10 ? lm : music;
        std::string text;
        for (int w = 0; w < 25; ++w) text += pool[rng() % pool.size()] + " ";
        docs.emplace_back((i < 10 ? "lm-" : "music-") + std::to_string(i), text);
    }
    return docs;
}

std::vector<std::string> twenty_docs() {
    static const std::vector<std::string> words{"alpha", "beta", "gamma", "delta", "omega", "sigma", "kappa", "theta"};
    std::mt19937_64 rng(17);
    std::vector<std::string> docs;
    for (int i = 0; i < 20; ++i) {
        std::string d;
        for (int w = 0, n = 3 + int(rng() % 10); w < n; ++w) d += words[rng() % words.size()] + " ";
        docs.push_back(d);
    }
    return docs;
}

}  // namespace

TEST_SUITE("topics") {
    TEST_CASE("two-document idf is forced by the formula") {
        const auto idx = build_tfidf({{"d1", "a b"}, {"d2", "a c"}}, kNoStop);
        CHECK(idx.idf.at(idx.vocabulary.at("a")) == 0.0);
        CHECK(idx.idf.at(idx.vocabulary.at("b")) == doctest::Approx(std::log(2.0)));
        CHECK(idx.idf.at(idx.vocabulary.at("c")) == doctest::Approx(std::log(2.0)));
        const auto& v = idx.doc_vectors.at("d1");
        REQUIRE(v.size() == 1);
        CHECK(v[0].first == idx.vocabulary.at("b"));
        CHECK(v[0].second == doctest::Approx(1.0));
    }

    TEST_CASE("stop-word documents are excluded with a warning") {
        const auto idx = build_tfidf({{"x", "the of and"}, {"y", "autoregressive models"}, {"z", "music models"}});
        CHECK_FALSE(idx.doc_vectors.count("x"));
        CHECK_FALSE(idx.warnings.empty());
        CHECK_THROWS_AS(build_tfidf({{"x", ""}, {"y", "the"}}), TfidfError);
        CHECK_THROWS_AS(build_tfidf({{"x", "only one"}}), TfidfError);
    }

    TEST_CASE("weights match the brute-force oracle on 20 documents") {
        const auto docs = twenty_docs();
        std::vector<std::pair<std::string, std::string>> in;
        for (std::size_t i = 0; i < docs.size(); ++i) in.emplace_back("d" + std::to_string(100 + i), docs[i]);
        const auto idx = build_tfidf(in, kNoStop);
        const auto expect = oracle::tfidf(docs);
        for (std::size_t i = 0; i < docs.size(); ++i) {
            const auto it = idx.doc_vectors.find(in[i].first);
            if (expect[i].empty()) {
                CHECK(it == idx.doc_vectors.end());
                continue;
            }
            REQUIRE(it != idx.doc_vectors.end());
            CHECK(it->second.size() == expect[i].size());
            for (const auto& [col, w] : it->second) CHECK(w == doctest::Approx(expect[i].at(idx.token(col))).epsilon(1e-12));
            CHECK(norm(it->second) == doctest::Approx(1.0));
        }
    }

    TEST_CASE("planted two-topic corpus: k = 2 and exact assignment") {
        const auto idx = build_tfidf(planted_corpus());
        const auto model = cluster_topics(idx, 2, 5, 42);
        CHECK(model.k == 2);
        const std::size_t lm = model.assignment.at("lm-0");
        for (const auto& [id, c] : model.assignment) CHECK((c == lm) == (id.rfind("lm-", 0) == 0));
        for (const auto& [k, s] : model.silhouette_by_k)
            if (k != 2) CHECK(s < model.silhouette_by_k.at(2));
        CHECK(model.silhouette >= -1);
        CHECK(model.silhouette <= 1);
        CHECK(cluster_topics(idx, 2, 5, 42) == model);
        CHECK(model.labels.size() == 2);
    }

    TEST_CASE("library silhouette agrees with the oracle") {
        const auto idx = build_tfidf(planted_corpus());
        std::vector<SparseVector> pts;
        std::vector<std::vector<double>> dense;
        for (const auto& [id, v] : idx.doc_vectors) {
            pts.push_back(v);
            dense.push_back(to_dense(v, idx.dimension()));
        }
        for (std::size_t k = 2; k <= 5; ++k) {
            const auto km = kmeans(pts, idx.dimension(), k, 42);
            CHECK(silhouette(pts, km.assignment) == doctest::Approx(oracle::silhouette(dense, km.assignment)));
        }
        std::vector<std::size_t> with_singleton(pts.size(), 0);
        with_singleton[0] = 1;
        CHECK(silhouette(pts, with_singleton) == doctest::Approx(oracle::silhouette(dense, with_singleton)));
    }

    TEST_CASE("k-means objective never increases") {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> noise(0, 0.3);
        std::vector<SparseVector> pts;
        for (int i = 0; i < 60; ++i) {
            DenseVector d(4, 0.0);
            d[i % 3] = 2.0;
            for (auto& x : d) x += noise(rng);
            pts.push_back(to_sparse(d));
        }
        for (std::size_t k = 2; k <= 6; ++k) {
            const auto km = kmeans(pts, 4, k, 42);
            for (std::size_t i = 1; i < km.objective_history.size(); ++i)
                CHECK(km.objective_history[i] <= km.objective_history[i - 1] + 1e-12);
            CHECK(km.iterations <= 300);
            CHECK(km.assignment.size() == pts.size());
        }
    }

    TEST_CASE("forced k and invalid ranges") {
        const auto idx = build_tfidf(planted_corpus());
        const auto forced = cluster_topics(idx, 2, 2, 1);
        CHECK(forced.k == 2);
        CHECK(forced.silhouette_by_k.size() == 1);
        CHECK_THROWS_AS(cluster_topics(idx, 1, 3, 1), ClusteringError);
        CHECK_THROWS_AS(cluster_topics(idx, 2, 20, 1), ClusteringError);
        const auto tiny = build_tfidf({{"a", "x y"}, {"b", "y z"}}, kNoStop);
        CHECK_THROWS_AS(cluster_topics(tiny, 2, 2, 1), ClusteringError);
        const auto single = single_topic(tiny);
        CHECK(single.k == 1);
        CHECK(single.assignment.size() == 2);
        CHECK(default_k_max(20) == 10);
        CHECK(default_k_max(5) == 4);
    }

    TEST_CASE("sparse helpers") {
        SparseVector a{{0, 3.0}, {2, 4.0}};
        CHECK(norm(a) == doctest::Approx(5.0));
        normalize(a);
        CHECK(dot(a, a) == doctest::Approx(1.0));
        CHECK(to_sparse(to_dense(a, 3)) == a);
    }
}
