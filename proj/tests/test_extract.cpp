#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "litsynth/data_dir.hpp"
#include "litsynth/extract.hpp"
#include "litsynth/rules.hpp"
#include "support.hpp"

using namespace litsynth;

namespace {

const Extractor& extractor() {
    static const Extractor x = Extractor::load(default_data_dir());
    return x;
}

std::vector<std::string> hyper_items(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& h : extractor().extract_hyperparams(text)) out.push_back(h.name.str() + "=" + format_value(h.value));
    std::sort(out.begin(), out.end());
    return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::string numbered_paper(std::size_t refs) {
    std::string t = "A Numbered Paper\nAnna Berg\n2021\n\nIntroduction\nAs shown in [12], small models work. Also see [99] "
                    "and [3, 7].\n\nReferences\n";
    for (std::size_t i = 1; i <= refs; ++i)
        t += "[" + std::to_string(i) + "] A. Author" + std::string(1, char('a' + i)) + " and B. Other. Paper " +
             std::to_string(i) + ". Venue, " + std::to_string(2000 + i) + ".\n";
    return t;
}

}  // namespace

TEST_SUITE("extract") {
    TEST_CASE("hyperparameter phrasings from the method descriptions") {
        CHECK(hyper_items("We use a learning rate 0.001 throughout.") ==
              std::vector<std::string>{"learning_rate=0.001"});
        const auto lstm = hyper_items("Our model is a 3-layer LSTM.");
        CHECK(has(lstm, "num_layers=3"));
        CHECK(has(lstm, "architecture=LSTM"));
        CHECK(lstm.size() == 2);

        const auto d = extractor().extract_hyperparams("In all runs the dropout was set to 40%.");
        REQUIRE(d.size() == 1);
        CHECK(d[0].name.str() == "dropout");
        CHECK(std::get<double>(d[0].value) == doctest::Approx(0.40));
        CHECK(d[0].unit == "%");

        CHECK(hyper_items("We apply gradient clipping at 0.25 to every update.") ==
              std::vector<std::string>{"grad_clip=0.25"});

        const auto sizes = extractor().extract_hyperparams("The layers have hidden sizes 1150, 1150, and 400.");
        std::vector<double> hs;
        for (const auto& h : sizes)
            if (h.name.str() == "hidden_size") hs.push_back(std::get<double>(h.value));
        CHECK(hs == std::vector<double>{1150, 1150, 400});
    }

    TEST_CASE("number notations") {
        CHECK(hyper_items("Adam with a learning rate of 2e-4.") ==
              std::vector<std::string>{"learning_rate=2e-04", "optimizer=Adam"});
        CHECK(has(hyper_items("The learning rate is 2 \\times 10^{-4}."), "learning_rate=2e-04"));
        CHECK(has(hyper_items("We used a learning rate of 2×10^-4."), "learning_rate=2e-04"));
        CHECK(has(hyper_items("The model has 360M parameters."), "param_count=360000000"));
        CHECK(has(hyper_items("Training runs for 800K steps."), "steps=800000"));
        CHECK(has(hyper_items("We use a batch size of 1,024 sequences."), "batch_size=1024"));
        CHECK(has(hyper_items("We stack three LSTM layers."), "num_layers=3"));

        const auto p = parse_number("360M");
        REQUIRE(p);
        CHECK(p->value == 360e6);
        CHECK(p->unit == "M");
        CHECK(parse_number("40%", UnitMode::keep)->value == 40);
        CHECK(parse_number("3 million")->value == 3e6);
        CHECK_FALSE(parse_number("abc"));
        CHECK(parse_count("twelve") == 12);
        CHECK(parse_count("7") == 7);
        CHECK_FALSE(parse_count("many"));
    }

    TEST_CASE("results with datasets and splits") {
        const auto a = extractor().extract_results("Prior work reported perplexity 18.3 on WikiText--103.");
        REQUIRE(a.size() == 1);
        CHECK(a[0].metric.str() == "perplexity");
        CHECK(a[0].value == 18.3);
        CHECK(a[0].dataset == "WikiText-103");

        const auto b = extractor().extract_results("Our model achieved test perplexity 66.5 after tuning.");
        REQUIRE(b.size() == 1);
        CHECK(b[0].value == 66.5);
        CHECK(b[0].split == Split::test);

        const auto c = extractor().extract_results("It reaches a per-event perplexity 70.3 on the Lakh MIDI test set.");
        REQUIRE(c.size() == 1);
        CHECK(c[0].value == 70.3);
        CHECK(c[0].dataset == "Lakh MIDI");
        CHECK(c[0].split == Split::test);

        CHECK(extractor().extract_results("Perplexity is a poor proxy for quality.").empty());

        const auto bleu = extractor().extract_results("The system obtains a BLEU of 27.3 on WMT'14 En-De.");
        REQUIRE(bleu.size() == 1);
        CHECK(bleu[0].dataset == "WMT'14 En-De");
    }

    TEST_CASE("citations: numbered, author-year, LaTeX") {
        const std::string t = numbered_paper(20);
        const auto links = extractor().extract_citations(t);
        const auto find = [&](std::string_view marker) {
            std::vector<CitationLink> out;
            for (const auto& l : links)
                if (l.marker == marker) out.push_back(l);
            return out;
        };
        const auto twelve = find("[12]");
        REQUIRE(twelve.size() == 1);
        CHECK(twelve[0].resolved_key == "authorm2012");
        const auto missing = find("[99]");
        REQUIRE(missing.size() == 1);
        CHECK_FALSE(missing[0].resolved_key);
        CHECK(find("[3, 7]").size() == 2);
        for (const auto& l : links) {
            CHECK(slice(t, l.span) == l.marker);
            CHECK(l.statement_span.contains(l.span));
        }

        const std::string ay =
            "Intro\n\nAttention replaced recurrence (Vaswani et al., 2017). Pixel models exist (van den Oord et al., "
            "2016a; van den Oord et al., 2016b). Hochreiter and Schmidhuber (1997) proposed gating. Unknown (Nobody, "
            "1999).\n\nReferences\n"
            "Vaswani, A., Shazeer, N., and Parmar, N. Attention is all you need. NeurIPS, 2017.\n"
            "van den Oord, A., Kalchbrenner, N., and Kavukcuoglu, K. Pixel recurrent neural networks. ICML, 2016.\n"
            "van den Oord, A., Kalchbrenner, N., Vinyals, O., et al. Conditional image generation. NeurIPS, 2016.\n"
            "Hochreiter, S. and Schmidhuber, J. Long short-term memory. Neural Computation, 1997.\n";
        std::vector<std::string> keys;
        std::size_t unresolved = 0;
        for (const auto& l : extractor().extract_citations(ay)) {
            if (l.resolved_key) keys.push_back(*l.resolved_key);
            else ++unresolved;
        }
        std::sort(keys.begin(), keys.end());
        CHECK(keys == std::vector<std::string>{"hochreiter1997", "oord2016a", "oord2016b", "vaswani2017"});
        CHECK(unresolved == 1);

        const std::string tex =
            "Intro\n\nAs in \\cite{radford2019language} and \\citep{vaswani2017attention,missing2020}.\n\n"
            "References\nRadford, A. and Wu, J. Language models are unsupervised multitask learners. 2019.\n"
            "Vaswani, A. and Shazeer, N. Attention is all you need. NeurIPS, 2017.\n";
        keys.clear();
        for (const auto& l : extractor().extract_citations(tex))
            keys.push_back(l.resolved_key.value_or("-"));
        std::sort(keys.begin(), keys.end());
        CHECK(keys == std::vector<std::string>{"-", "radford2019", "vaswani2017"});
    }

    TEST_CASE("metadata from the header, and record precedence") {
        const std::string text = read_file(testing::fixtures() / "case_studies" / "awd-lstm.txt");
        const auto md = extractor().extract_metadata(text);
        CHECK(md.title == "Regularised LSTM Language Models on WikiText-2: Configuration Notes");
        CHECK(md.authors == std::vector<std::string>{"Iris Calder", "Tomas Verhoeven"});
        CHECK(md.year == 2024);
        REQUIRE(md.abstract);
        CHECK(md.abstract->rfind("These notes describe", 0) == 0);

        PaperRecord api;
        api.title = "API Title";
        api.year = 2019;
        const auto over = extractor().extract_metadata(text, &api);
        CHECK(over.title == "API Title");
        CHECK(over.year == 2019);
        CHECK(over.authors == md.authors);

        const auto none = extractor().extract("1234\n5678\n");
        CHECK(none.metadata.title.empty());
        CHECK(none.metadata.authors.empty());
        CHECK(std::find(none.warnings.begin(), none.warnings.end(), "metadata: no title found") != none.warnings.end());
    }

    TEST_CASE("span fidelity and normalization round trip") {
        const std::string text = read_file(testing::fixtures() / "case_studies" / "transformer-xl.txt") + "\n\n" +
                                 "The dropout was set to 25% and embedding dropout to 10%.";
        const auto b = extractor().extract(text);
        CHECK_FALSE(b.hyperparams.empty());
        for (const auto& h : b.hyperparams) {
            CHECK(slice(text, h.span) == h.surface);
            if (h.unit == "%") {
                const auto raw = parse_number(h.surface, UnitMode::keep);
                REQUIRE(raw);
                CHECK(std::get<double>(h.value) * 100 == doctest::Approx(raw->value));
            }
        }
        for (const auto& r : b.results) CHECK(slice(text, r.span) == r.surface);
        for (const auto& c : b.citations) CHECK(slice(text, c.span) == c.marker);
    }

    TEST_CASE("locality: concatenation extracts the union") {
        const std::string a = "First Paper\n\nWe train a 2-layer GRU with a learning rate of 0.01 for 10 epochs.";
        const std::string b = "Second Paper\n\nThe model reaches a test perplexity of 55.2 on Penn Treebank. "
                              "Dropout is 0.3.";
        const std::string both = a + "\n\n" + b;
        const std::size_t shift = a.size() + 2;
        using Key = std::tuple<std::string, std::string, std::size_t>;
        const auto keys = [](const std::vector<HyperparamFact>& fs, std::size_t off) {
            std::vector<Key> k;
            for (const auto& f : fs) k.emplace_back(f.name.str(), format_value(f.value), f.span.begin + off);
            std::sort(k.begin(), k.end());
            return k;
        };
        auto expected = keys(extractor().extract_hyperparams(a), 0);
        const auto kb = keys(extractor().extract_hyperparams(b), shift);
        expected.insert(expected.end(), kb.begin(), kb.end());
        std::sort(expected.begin(), expected.end());
        CHECK(keys(extractor().extract_hyperparams(both), 0) == expected);
        CHECK(extractor().extract_results(both).size() ==
              extractor().extract_results(a).size() + extractor().extract_results(b).size());
    }

    TEST_CASE("duplicate facts on overlapping spans collapse") {
        HyperparamFact f{HyperparamName::parse("dropout"), 0.4, std::nullopt, {10, 13}, "0.4"};
        HyperparamFact g = f;
        g.span = {11, 13};
        HyperparamFact far = f;
        far.span = {40, 43};
        const auto out = dedup_hyperparams({f, g, far});
        CHECK(out.size() == 2);
        CHECK(out[0].span == Span{10, 13});
        const auto bundle = extractor().extract_hyperparams("The learning rate 0.001 is used; learning rate 0.001.");
        CHECK(bundle.size() == 2);
    }

    TEST_CASE("rule-free fallback finds less") {
        const std::string text = read_file(testing::fixtures() / "case_studies" / "awd-lstm.txt");
        const auto with = extractor().extract_hyperparams(text);
        const auto without = extractor().extract_hyperparams(text, {false});
        CHECK(without.size() < with.size());
    }

    TEST_CASE("rule file grammar") {
        const auto rules = parse_rules("# c\n\nhyper | learning_rate | \\blr\\b | NUM | plain | 10 | after\n"
                                       "result | perplexity | ppl | NUM | keep | 5 | before\n");
        REQUIRE(rules.size() == 2);
        CHECK(rules[0].window == 10);
        CHECK(rules[1].order == RuleOrder::before);
        CHECK(rules[1].unit == UnitMode::keep);
        CHECK_THROWS_AS(parse_rules("hyper | x | y | NUM | plain\n"), RuleError);
        CHECK_THROWS_AS(parse_rules("hyper | x | ( | NUM | plain | 4 | after\n"), RuleError);
        CHECK_THROWS_AS(parse_rules("magic | x | y | NUM | plain | 4 | after\n"), RuleError);

        const Extractor custom(parse_rules("hyper | warmup | \\bwarmup\\s+of\\b | NUM | plain | 4 | after\n"), {});
        const auto facts = custom.extract_hyperparams("We use a warmup of 4000 before decay.");
        REQUIRE(facts.size() == 1);
        CHECK(facts[0].name.str() == "warmup");
        CHECK(facts[0].name.kind == HyperparamKind::other);
    }

    TEST_CASE("gazetteer grammar") {
        const auto g = parse_gazetteer("# names\nToy Set | \\btoy\\s*set\\b\n");
        REQUIRE(g.size() == 1);
        CHECK(g[0].name == "Toy Set");
        CHECK_THROWS(parse_gazetteer("no separator here\n"));
    }

    TEST_CASE("fact bundle json round trip") {
        const std::string text = read_file(testing::fixtures() / "case_studies" / "music-arrival.txt");
        const auto b = extractor().extract(text);
        CHECK(nlohmann::json(b).get<FactBundle>() == b);
    }
}
