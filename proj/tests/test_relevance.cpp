#include <doctest.h>

#include <algorithm>
#include <random>

#include "litsynth/data_dir.hpp"
#include "litsynth/fixtures.hpp"
#include "litsynth/relevance.hpp"
#include "support.hpp"

using namespace litsynth;

namespace {

const std::vector<std::string> kKeywords{"autoregressive", "language model"};

// Separable toy data: positives and negatives drawn from disjoint word pools.
std::vector<std::pair<std::string, bool>> disjoint_corpus(std::size_t per_class, std::uint64_t seed) {
    static const std::vector<std::string> pos{"transformer", "decoder", "token", "perplexity", "sequence",
                                              "attention",   "lstm",    "vocab", "corpus",     "sampling"};
    static const std::vector<std::string> neg{"glacier", "sediment", "basalt", "erosion", "tectonic",
                                              "magma",   "strata",   "quartz", "fossil",  "aquifer"};
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::string, bool>> out;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool label = i % 2 == 0;
        const auto& pool = label ? pos : neg;
        std::string text;
        for (int w = 0; w < 12; ++w) text += pool[rng() % pool.size()] + " ";
        out.emplace_back(text, label);
    }
    return out;
}

}  // namespace

TEST_SUITE("relevance") {
    TEST_CASE("keyword filter examples") {
        CHECK(keyword_filter("An autoregressive model of text.", kKeywords));
        CHECK_FALSE(keyword_filter("We study diffusion models.", kKeywords));
        CHECK(keyword_filter("Auto-Regressive decoding", kKeywords));
        CHECK_FALSE(keyword_filter("Auto-Regressive decoding", kKeywords, false));
        CHECK(keyword_filter("two Language Models compared", kKeywords));
        CHECK_FALSE(keyword_filter("nonautoregressive", {"autoregressive"}));
        CHECK_FALSE(keyword_filter("", kKeywords));
    }

    TEST_CASE("adding keywords never removes a hit") {
        const std::vector<std::string> texts{"A causal transformer for code.", "Sleep EEG staging.",
                                             "Recurrent language models.", "Nothing relevant here."};
        std::vector<std::string> kws;
        std::vector<bool> before(texts.size(), false);
        for (const char* k : {"language model", "causal transformer", "eeg", "zebra"}) {
            kws.push_back(k);
            for (std::size_t i = 0; i < texts.size(); ++i) {
                const bool now = keyword_filter(texts[i], kws);
                CHECK((!before[i] || now));
                before[i] = now;
            }
        }
    }

    TEST_CASE("disjoint vocabularies give perfect held-out accuracy") {
        const auto train = disjoint_corpus(40, 1);
        const auto held = disjoint_corpus(20, 2);
        const auto model = train_classifier(train, 42);
        std::size_t correct = 0;
        for (const auto& [text, label] : held) correct += (model.score(text) >= model.threshold) == label;
        CHECK(correct == held.size());
    }

    TEST_CASE("training is deterministic and rejects one class") {
        const auto data = disjoint_corpus(40, 1);
        CHECK(train_classifier(data, 42) == train_classifier(data, 42));
        std::vector<std::pair<std::string, bool>> positives;
        for (const auto& d : data)
            if (d.second) positives.push_back(d);
        CHECK_THROWS_AS(train_classifier(positives, 42), TrainingError);
        CHECK_THROWS_AS(train_classifier({}, 42), TrainingError);
    }

    TEST_CASE("model invariants and persistence") {
        const auto model = train_classifier(disjoint_corpus(20, 3), 9);
        std::vector<bool> seen(model.vocabulary.size(), false);
        for (const auto& [tok, idx] : model.vocabulary) {
            REQUIRE(idx < seen.size());
            seen[idx] = true;
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
        CHECK(model.threshold > 0);
        CHECK(model.threshold < 1);
        testing::TempDir dir("model");
        save_model(model, dir / "m.json");
        CHECK(load_model(dir / "m.json") == model);
    }

    TEST_CASE("classify decision shape") {
        const auto model = train_classifier(relevance_training_set(60, 42), 42);
        const auto empty = classify(&model, "", kKeywords, "e");
        CHECK_FALSE(empty.keyword_hit);
        CHECK_FALSE(empty.relevant);
        CHECK_FALSE(empty.classifier_score);
        CHECK(empty.deciding_stage == DecidingStage::keyword);

        const auto shipped = load_keywords(default_data_dir() / "keywords" / "autoregressive.txt");
        std::string every;
        for (const auto& k : shipped) every += k + " ";
        const auto all = classify(&model, every, shipped);
        CHECK(all.keyword_hit);
        REQUIRE(all.classifier_score);
        CHECK(all.deciding_stage == DecidingStage::classifier);
        CHECK(all.relevant);

        const auto no_model = classify(nullptr, "an autoregressive inflation forecast", kKeywords);
        CHECK(no_model.relevant == no_model.keyword_hit);
        CHECK_FALSE(no_model.classifier_score);
    }

    TEST_CASE("shipped training data separates held-out synthetic text") {
        const auto train = relevance_training_set(150, 42);
        const auto held = relevance_training_set(50, 4242);
        const auto model = train_classifier(train, 42);
        std::size_t tp = 0, fp = 0, fn = 0;
        for (const auto& [text, label] : held) {
            const bool pred = classify(&model, text, {"autoregressive", "language model", "sequence model"}).relevant;
            tp += pred && label;
            fp += pred && !label;
            fn += !pred && label;
        }
        const double p = tp + fp ? double(tp) / double(tp + fp) : 0;
        const double r = tp + fn ? double(tp) / double(tp + fn) : 0;
        const double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0;
        CHECK(f1 >= 0.85);
    }

    TEST_CASE("keyword list file format") {
        testing::TempDir dir("kw");
        write_file_atomic(dir / "k.txt", "# comment\nautoregressive\n\n  language model  \n");
        CHECK(load_keywords(dir / "k.txt") == std::vector<std::string>{"autoregressive", "language model"});
    }
}
