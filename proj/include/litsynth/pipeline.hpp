#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "litsynth/http.hpp"
#include "litsynth/record.hpp"
#include "litsynth/summarise.hpp"

namespace litsynth {

/// Ablation switches; names as used by --disable.
inline constexpr const char* kStageNames[] = {"parallel_parsing", "relevance_classifier", "rule_patterns",
                                              "llm_summarisation"};

struct RunConfig {
    std::string topic_query;
    int year_min = 1900;
    int year_max = 2100;
    std::size_t worker_count = 4;
    std::uint64_t random_seed = 42;
    std::map<std::string, bool> stage_toggles = {{"parallel_parsing", true},
                                                 {"relevance_classifier", true},
                                                 {"rule_patterns", true},
                                                 {"llm_summarisation", true}};

    std::filesystem::path corpus_cache = "corpus";
    std::filesystem::path kb_path = "kb.jsonl";
    std::filesystem::path report_path = "report.md";
    std::filesystem::path artifacts_dir = "artifacts";
    std::optional<std::string> summariser_endpoint;

    std::filesystem::path data_dir;                 // empty: default_data_dir()
    std::optional<std::filesystem::path> keywords;  // extra keyword phrases, one per line
    std::vector<Source> sources = {Source::arxiv, Source::semantic_scholar};
    std::filesystem::path local_dir;  // for Source::local_file
    bool overwrite = false;

    // Injection points for tests and harnesses; not settable from the CLI.
    std::shared_ptr<HttpClient> http;
    std::shared_ptr<SummaryBackend> summary_backend;

    bool enabled(const std::string& stage) const;
    /// Throws ConfigError on any invariant violation.
    void validate() const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for bad command lines; the CLI maps it to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Some stages could not complete; the CLI maps it to exit code 2.
class PartialRunError : public std::runtime_error {
public:
    PartialRunError(const std::string& what, std::vector<std::string> completed)
        : std::runtime_error(what), completed_(std::move(completed)) {}
    const std::vector<std::string>& completed_stages() const { return completed_; }

private:
    std::vector<std::string> completed_;
};

struct RunOutput {
    std::vector<TopicSection> report;
    std::string report_text;
    std::filesystem::path kb_path;
    std::vector<std::filesystem::path> script_artifacts;
    std::map<std::string, std::size_t> status_counts;
    std::vector<std::string> warnings;  // non-fatal problems (failed tasks, partial sources)
    std::vector<std::string> completed_stages;
    std::map<std::string, double> stage_seconds;
    double total_seconds = 0;
};

/// Run flags only (no subcommand). Throws UsageError.
RunConfig parse_cli_args(const std::vector<std::string>& args);

/// Stages in order: ingest, filter + parse + extract (parallel), aggregate,
/// cluster, summarise, scripts. Throws ConfigError before doing any work
/// when paths are unusable, PartialRunError when retrieval fails outright
/// or a per-paper task fails.
RunOutput run_pipeline(const RunConfig& config);

}  // namespace litsynth
