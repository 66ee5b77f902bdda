#include <doctest.h>

#include "litsynth/data_dir.hpp"
#include "litsynth/ingestion.hpp"
#include "litsynth/kb.hpp"
#include "litsynth/pipeline.hpp"
#include "support.hpp"

using namespace litsynth;

namespace {

RunConfig config_in(const testing::TempDir& dir) {
    RunConfig c;
    c.topic_query = "autoregressive";
    c.kb_path = dir / "kb.jsonl";
    c.report_path = dir / "report.md";
    c.artifacts_dir = dir / "artifacts";
    c.corpus_cache = dir / "cache";
    c.worker_count = 2;
    return c;
}

RunConfig case_study_config(const testing::TempDir& dir) {
    RunConfig c = config_in(dir);
    c.corpus_cache = testing::fixtures() / "case_studies";
    return c;
}

std::shared_ptr<HttpClient> recordings() {
    return std::make_shared<ReplayHttpClient>(testing::fixtures() / "api" / "recordings.jsonl");
}

}  // namespace

TEST_SUITE("pipeline") {
    TEST_CASE("command-line flags") {
        const RunConfig c = parse_cli_args({"--topic", "autoregressive models", "--years", "2016:2024", "--workers",
                                            "8", "--disable", "rule_patterns", "--disable", "llm_summarisation"});
        CHECK(c.topic_query == "autoregressive models");
        CHECK(c.year_min == 2016);
        CHECK(c.year_max == 2024);
        CHECK(c.worker_count == 8);
        CHECK(c.random_seed == 42);
        CHECK_FALSE(c.enabled("rule_patterns"));
        CHECK_FALSE(c.enabled("llm_summarisation"));
        CHECK(c.enabled("parallel_parsing"));
        CHECK(parse_cli_args({"--topic", "x", "--sources", "local_file", "--local-dir", "/tmp"}).sources ==
              std::vector<Source>{Source::local_file});

        CHECK_THROWS_AS(parse_cli_args({"--topic", "x", "--years", "2024:2016"}), UsageError);
        CHECK_THROWS_AS(parse_cli_args({"--topic", "x", "--years", "2016-2024"}), UsageError);
        CHECK_THROWS_AS(parse_cli_args({"--years", "2016:2024"}), UsageError);
        CHECK_THROWS_AS(parse_cli_args({"--topic", "x", "--frobnicate"}), UsageError);
        CHECK_THROWS_AS(parse_cli_args({"--topic", "x", "--disable", "everything"}), UsageError);
        CHECK_THROWS_AS(parse_cli_args({"--topic", "x", "--workers", "0"}), UsageError);
        CHECK_THROWS_AS(parse_cli_args({"--topic", "x", "--sources", "library"}), UsageError);
    }

    TEST_CASE("config validation") {
        RunConfig c;
        c.topic_query = "x";
        CHECK_NOTHROW(c.validate());
        c.year_min = 2030;
        c.year_max = 2020;
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c.year_max = 2040;
        c.stage_toggles["teleport"] = true;
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }

    TEST_CASE("case-study corpus end to end") {
        testing::TempDir dir("pipe-case");
        const RunOutput out = run_pipeline(case_study_config(dir));
        const KnowledgeBase kb = KnowledgeBase::load(dir / "kb.jsonl");
        CHECK(kb.size() == 3);
        CHECK(out.status_counts.at("extracted") == 3);
        CHECK_FALSE(out.report.empty());
        CHECK(out.script_artifacts.size() == 3);

        std::set<std::string> ids;
        for (const auto& e : kb.entries()) ids.insert(e.record.canonical_id);
        for (const auto& sec : out.report) {
            for (const auto& m : sec.members) CHECK(ids.count(m));
            for (const auto& s : sec.summary.sentences)
                for (const auto& cite : s.citations) CHECK(ids.count(cite));
        }
        for (const auto& path : out.script_artifacts) {
            const std::string script = read_file(path);
            bool names_paper = false;
            for (const auto& id : ids) names_paper |= script.find(id) != std::string::npos;
            CHECK(names_paper);
        }
        CHECK(read_file(dir / "report.md") == out.report_text);
        for (const char* stage : {"ingest", "filter_parse_extract", "aggregate"})
            CHECK(std::find(out.completed_stages.begin(), out.completed_stages.end(), stage) !=
                  out.completed_stages.end());
    }

    TEST_CASE("repeat runs are byte-identical") {
        testing::TempDir a("pipe-a"), b("pipe-b");
        RunConfig ca = case_study_config(a), cb = case_study_config(b);
        cb.worker_count = 1;
        run_pipeline(ca);
        run_pipeline(cb);
        CHECK(read_file(a / "kb.jsonl") == read_file(b / "kb.jsonl"));
        CHECK(read_file(a / "report.md") == read_file(b / "report.md"));
    }

    TEST_CASE("classifier disabled still completes") {
        testing::TempDir dir("pipe-noclf");
        RunConfig c = case_study_config(dir);
        c.stage_toggles["relevance_classifier"] = false;
        const RunOutput out = run_pipeline(c);
        CHECK(KnowledgeBase::load(c.kb_path).size() == 3);
        CHECK(out.status_counts.at("extracted") == 3);
    }

    TEST_CASE("empty retrieval yields empty outputs") {
        testing::TempDir dir("pipe-empty");
        RunConfig c = config_in(dir);
        c.topic_query = "generative models of imaginary turtles";
        c.year_min = 2016;
        c.year_max = 2024;
        c.http = recordings();
        const RunOutput out = run_pipeline(c);
        CHECK(KnowledgeBase::load(c.kb_path).size() == 0);
        CHECK(out.report.empty());
        CHECK(out.script_artifacts.empty());
        CHECK(read_file(c.report_path).find("No papers") != std::string::npos);

        testing::TempDir local("pipe-local");
        RunConfig l = config_in(local);
        l.sources = {Source::local_file};
        l.local_dir = local / "empty";
        std::filesystem::create_directories(l.local_dir);
        CHECK(run_pipeline(l).report.empty());
    }

    TEST_CASE("recorded API run") {
        testing::TempDir dir("pipe-api");
        RunConfig c = config_in(dir);
        c.topic_query = "autoregressive generative models";
        c.year_min = 2016;
        c.year_max = 2024;
        c.http = recordings();
        const RunOutput out = run_pipeline(c);
        const KnowledgeBase kb = KnowledgeBase::load(c.kb_path);
        CHECK(kb.size() > 0);
        CHECK(std::filesystem::exists(c.corpus_cache / "manifest.jsonl"));
        bool found_lr = false;
        for (const auto& e : kb.entries())
            for (const auto& h : e.facts.hyperparams) found_lr |= h.value == FactValue(0.0001);
        CHECK(found_lr);
    }

    TEST_CASE("unusable output path fails before any request") {
        testing::TempDir dir("pipe-cfg");
        RunConfig c = config_in(dir);
        auto replay = std::make_shared<ReplayHttpClient>();
        c.http = replay;
        c.kb_path = dir.path();  // a directory
        CHECK_THROWS_AS(run_pipeline(c), ConfigError);
        c.kb_path = "/proc/litsynth/kb.jsonl";
        CHECK_THROWS_AS(run_pipeline(c), ConfigError);
        CHECK(replay->calls() == 0);
    }

    TEST_CASE("unreachable API is a partial run") {
        testing::TempDir dir("pipe-down");
        RunConfig c = config_in(dir);
        c.http = std::make_shared<ReplayHttpClient>();
        try {
            run_pipeline(c);
            FAIL("expected PartialRunError");
        } catch (const PartialRunError& e) {
            CHECK(std::string(e.what()).find("retrieval failed") != std::string::npos);
            CHECK(e.completed_stages().empty());
        }
    }
}
