// litsynth: literature synthesis pipeline and its evaluation harness.
//
//   litsynth [run] --topic Q [--years MIN:MAX] [--workers N] [--seed S] [--disable STAGE]...
//   litsynth kb query|aggregate ...
//   litsynth eval --kb PATH --gold PATH
//   litsynth ablate --corpus DIR --gold PATH --work DIR
//   litsynth scale --sizes 50,100,200,400 --work DIR
//   litsynth gen-corpus --out DIR --n N
//   litsynth gen-relevance --out PATH

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "litsynth/bench.hpp"
#include "litsynth/eval.hpp"
#include "litsynth/fixtures.hpp"
#include "litsynth/kb.hpp"
#include "litsynth/pipeline.hpp"
#include "litsynth/text.hpp"

using namespace litsynth;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;

int run_command(const std::vector<std::string>& args) {
    const RunConfig cfg = parse_cli_args(args);
    const RunOutput out = run_pipeline(cfg);
    std::printf("papers:");
    for (const auto& [status, n] : out.status_counts) std::printf(" %s=%zu", status.c_str(), n);
    std::printf("\nknowledge base: %s\nreport: %s (%zu topics)\nscripts: %zu\n", out.kb_path.string().c_str(),
                cfg.report_path.string().c_str(), out.report.size(), out.script_artifacts.size());
    for (const auto& w : out.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return 0;
}

int kb_command(std::vector<std::string> args) {
    CLI::App app{"litsynth kb"};
    std::string kb_path = "kb.jsonl";
    auto* query = app.add_subcommand("query", "structured query");
    std::string kind = "free_lookup", name, cmp = "<", dataset;
    double threshold = 0;
    query->add_option("--kb", kb_path);
    query->add_option("--kind", kind, "facts_by_name | papers_by_metric_threshold | value_histogram | free_lookup");
    query->add_option("--name", name)->required();
    query->add_option("--cmp", cmp);
    query->add_option("--threshold", threshold);
    query->add_option("--dataset", dataset);
    auto* aggregate = app.add_subcommand("aggregate", "model x dataset x metric table");
    aggregate->add_option("--kb", kb_path);
    app.require_subcommand(1);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    const KnowledgeBase kb = KnowledgeBase::load(kb_path);
    if (aggregate->parsed()) {
        for (const auto& r : kb.aggregate().results)
            std::printf("%-28s %-16s %-12s %10s %-6s %s\n", r.model.c_str(), r.dataset.c_str(), r.metric.c_str(),
                        format_number(r.value).c_str(), r.split ? std::string(to_string(*r.split)).c_str() : "-",
                        r.paper_id.c_str());
        return 0;
    }
    Query q;
    const auto k = query_kind_from_string(kind);
    if (!k) throw UsageError("unknown query kind '" + kind + "'");
    const auto c = comparator_from_string(cmp);
    if (!c) throw UsageError("unknown comparator '" + cmp + "'");
    q.kind = *k;
    q.name = name;
    q.comparator = *c;
    q.threshold = threshold;
    if (!dataset.empty()) q.dataset = dataset;
    for (const auto& row : kb.query(q)) std::printf("%s\n", row.dump().c_str());
    return 0;
}

int eval_command(std::vector<std::string> args) {
    CLI::App app{"litsynth eval"};
    std::string kb_path, gold_path;
    bool macro = false, json = false;
    app.add_option("--kb", kb_path)->required();
    app.add_option("--gold", gold_path)->required();
    app.add_flag("--macro", macro, "average per paper instead of pooling counts");
    app.add_flag("--json", json);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    const auto report = evaluate_corpus(load_gold(gold_path), KnowledgeBase::load(kb_path),
                                        macro ? Averaging::macro : Averaging::micro);
    std::printf("%s", json ? (eval_report_json(report).dump(2) + "\n").c_str() : format_eval_report(report).c_str());
    return 0;
}

int ablate_command(std::vector<std::string> args) {
    CLI::App app{"litsynth ablate"};
    RunConfig cfg;
    cfg.topic_query = "autoregressive";
    std::string corpus, gold, work = "ablation", keywords, data_dir;
    app.add_option("--corpus", corpus)->required();
    app.add_option("--gold", gold)->required();
    app.add_option("--work", work);
    app.add_option("--topic", cfg.topic_query);
    app.add_option("--keywords", keywords);
    app.add_option("--workers", cfg.worker_count);
    app.add_option("--seed", cfg.random_seed);
    app.add_option("--data-dir", data_dir);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    cfg.corpus_cache = corpus;
    if (!keywords.empty()) cfg.keywords = std::filesystem::path(keywords);
    if (!data_dir.empty()) cfg.data_dir = data_dir;
    std::printf("%s", format_ablation(run_ablation(cfg, load_gold(gold), work)).c_str());
    return 0;
}

int scale_command(std::vector<std::string> args) {
    CLI::App app{"litsynth scale"};
    std::vector<std::size_t> sizes{50, 100, 200, 400};
    ScalingOptions opts;
    std::string work = "scaling", data_dir;
    bool text = false;
    app.add_option("--sizes", sizes)->delimiter(',');
    app.add_option("--workers", opts.workers);
    app.add_option("--seed", opts.seed);
    app.add_option("--length", opts.length_words, "words per synthetic paper");
    app.add_option("--work", work);
    app.add_option("--data-dir", data_dir);
    app.add_flag("--text", text, "write plain text instead of PDF");
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    if (text) opts.format = CorpusFormat::text;
    if (!data_dir.empty()) opts.data_dir = data_dir;
    const ScalingReport r = run_scaling(sizes, opts, work);
    std::printf("%s", format_scaling(r).c_str());
    std::printf("published model: T(n) = %.2f n + %.0f min, M(n) = %.2f n + %.0f GB (not a target)\n",
                kPublishedTimeModel.slope, kPublishedTimeModel.intercept, kPublishedMemoryModel.slope,
                kPublishedMemoryModel.intercept);
    return 0;
}

int gen_corpus_command(std::vector<std::string> args) {
    CLI::App app{"litsynth gen-corpus"};
    std::string out;
    std::size_t n = 20, length = 600, distractors = 0;
    std::uint64_t seed = 42;
    bool pdf = false;
    app.add_option("--out", out)->required();
    app.add_option("--n", n);
    app.add_option("--seed", seed);
    app.add_option("--length", length);
    app.add_option("--distractors", distractors);
    app.add_flag("--pdf", pdf);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    const auto corpus = generate_corpus(random_specs(n, seed, length, {distractors}), seed, out,
                                        pdf ? CorpusFormat::pdf : CorpusFormat::text);
    std::printf("%zu papers, %zu gold annotations in %s\n", corpus.records.size(), corpus.gold.size(), out.c_str());
    return 0;
}

int gen_relevance_command(std::vector<std::string> args) {
    CLI::App app{"litsynth gen-relevance"};
    std::string out;
    std::size_t per_class = 150;
    std::uint64_t seed = 42;
    app.add_option("--out", out)->required();
    app.add_option("--per-class", per_class);
    app.add_option("--seed", seed);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    std::string lines;
    for (const auto& [text, relevant] : relevance_training_set(per_class, seed))
        lines += nlohmann::json{{"text", text}, {"relevant", relevant}}.dump() + "\n";
    write_file_atomic(out, lines);
    std::printf("%zu examples in %s\n", 2 * per_class, out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("litsynth"));
    if (const char* lvl = std::getenv("LITSYNTH_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
    std::vector<std::string> args(argv + 1, argv + argc);
    const std::string cmd = args.empty() ? "" : args.front();
    const std::vector<std::string> rest = args.empty() ? args : std::vector<std::string>(args.begin() + 1, args.end());
    try {
        if (cmd == "kb") return kb_command(rest);
        if (cmd == "eval") return eval_command(rest);
        if (cmd == "ablate") return ablate_command(rest);
        if (cmd == "scale") return scale_command(rest);
        if (cmd == "gen-corpus") return gen_corpus_command(rest);
        if (cmd == "gen-relevance") return gen_relevance_command(rest);
        if (cmd == "run") return run_command(rest);
        if (cmd == "--help" || cmd == "-h") {
            std::printf(
                "usage: litsynth [run] --topic Q [--years MIN:MAX] [--workers N] [--seed S] [--disable STAGE]...\n"
                "                [--kb PATH] [--report PATH] [--corpus-cache DIR] [--artifacts DIR]\n"
                "                [--summariser-endpoint URL] [--keywords FILE] [--sources arxiv,semantic_scholar,local_file]\n"
                "                [--local-dir DIR] [--data-dir DIR] [--overwrite]\n"
                "       litsynth kb query|aggregate ...\n"
                "       litsynth eval --kb PATH --gold PATH [--macro] [--json]\n"
                "       litsynth ablate --corpus DIR --gold PATH [--work DIR]\n"
                "       litsynth scale [--sizes 50,100,200,400] [--workers N] [--work DIR]\n"
                "       litsynth gen-corpus --out DIR [--n N] [--seed S] [--pdf]\n"
                "       litsynth gen-relevance --out PATH [--per-class N] [--seed S]\n"
                "stages: parallel_parsing relevance_classifier rule_patterns llm_summarisation\n");
            return 0;
        }
        return run_command(args);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitUsage;
    } catch (const PartialRunError& e) {
        std::fprintf(stderr, "partial run: %s\ncompleted stages: %s\n", e.what(), join(e.completed_stages(), ", ").c_str());
        return kExitPartial;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitPartial;
    }
}
