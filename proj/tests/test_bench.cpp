#include <doctest.h>

#include "litsynth/bench.hpp"
#include "litsynth/kb.hpp"
#include "support.hpp"

using namespace litsynth;

TEST_SUITE("bench") {
    TEST_CASE("least squares") {
        const LinearFit exact = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
        CHECK(exact.slope == doctest::Approx(2));
        CHECK(exact.intercept == doctest::Approx(1));
        CHECK(exact.r2 == doctest::Approx(1));
        // Hand-computed: x mean 2, y mean 2; sxy 2, sxx 2, residuals 1/3, -2/3, 1/3.
        const LinearFit rough = linear_fit({1, 2, 3}, {1, 3, 2});
        CHECK(rough.slope == doctest::Approx(0.5));
        CHECK(rough.intercept == doctest::Approx(1.0));
        CHECK(rough.r2 == doctest::Approx(0.25));
        CHECK(linear_fit({1, 2}, {4, 4}).r2 == 1.0);
        CHECK_THROWS(linear_fit({1}, {1}));
        CHECK_THROWS(linear_fit({2, 2}, {1, 3}));
    }

    TEST_CASE("published scaling model") {
        CHECK(kPublishedTimeModel.predict(1000) == doctest::Approx(41));
        CHECK(kPublishedMemoryModel.predict(1000) == doctest::Approx(11));
        CHECK(kPublishedTimeModel.predict(100) == doctest::Approx(5));
    }

    TEST_CASE("ablation on the annotated corpus") {
        testing::TempDir work("ablate");
        RunConfig base;
        base.topic_query = "autoregressive";
        base.corpus_cache = testing::fixtures() / "realistic";
        base.worker_count = 2;
        const auto gold = load_gold(testing::fixtures() / "realistic" / "gold.jsonl");
        const auto rows = run_ablation(base, gold, work.path());
        REQUIRE(rows.size() == 5);
        std::map<std::string, double> f1;
        for (const auto& r : rows) f1[r.configuration] = r.f1;
        CHECK(f1.at("no_parallel_parsing") == f1.at("full"));
        CHECK(f1.at("no_llm_summarisation") == f1.at("full"));
        for (const auto& [name, v] : f1)
            if (name != "no_rule_patterns") CHECK(f1.at("no_rule_patterns") < v);
        CHECK(f1.at("no_relevance_classifier") < f1.at("full"));
        CHECK(read_file(work / "full" / "kb.jsonl") == read_file(work / "no_parallel_parsing" / "kb.jsonl"));
        CHECK(format_ablation(rows).find("no_rule_patterns") != std::string::npos);
    }

    TEST_CASE("small scaling run") {
        testing::TempDir work("scale");
        ScalingOptions opts;
        opts.workers = 1;
        opts.length_words = 300;
        opts.format = CorpusFormat::text;
        const ScalingReport r = run_scaling({5, 10}, opts, work.path());
        REQUIRE(r.measurements.size() == 2);
        CHECK(r.measurements[0].processed == 5);
        CHECK(r.measurements[1].processed == 10);
        for (const auto& m : r.measurements) {
            CHECK(m.time_minutes > 0);
            CHECK(m.peak_memory_gb > 0);
        }
        CHECK(format_scaling(r).find("R^2") != std::string::npos);
    }
}
