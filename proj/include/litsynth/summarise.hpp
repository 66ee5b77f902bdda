#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "litsynth/http.hpp"
#include "litsynth/text.hpp"
#include "litsynth/tfidf.hpp"
#include "litsynth/topics.hpp"

namespace litsynth {

struct SummarySentence {
    std::string text;
    std::vector<std::string> citations;  // canonical ids
    /// Source document and span for extractive sentences.
    std::optional<std::string> source_id;
    std::optional<Span> source_span;
    friend bool operator==(const SummarySentence&, const SummarySentence&) = default;
};

struct Summary {
    std::vector<SummarySentence> sentences;
    bool extractive = true;
    std::vector<std::string> warnings;
    friend bool operator==(const Summary&, const Summary&) = default;
};

struct ClusterDocument {
    std::string id;
    std::string text;
};

/// Generation backend: prompt in, text out. Returns nullopt on failure and
/// sets `error`.
class SummaryBackend {
public:
    virtual ~SummaryBackend() = default;
    virtual std::optional<std::string> generate(const std::string& prompt, std::string& error) = 0;
};

/// POSTs {"prompt": ...} as JSON and reads "text" from the JSON reply. The
/// bearer token, if any, comes from the environment variable `token_env`.
class HttpSummaryBackend : public SummaryBackend {
public:
    HttpSummaryBackend(std::shared_ptr<HttpClient> client, std::string url,
                       std::string token_env = "LITSYNTH_SUMMARISER_TOKEN");
    std::optional<std::string> generate(const std::string& prompt, std::string& error) override;

private:
    std::shared_ptr<HttpClient> client_;
    std::string url_;
    std::string token_env_;
};

struct SummaryOptions {
    std::size_t sentences_per_document = 5;
    std::size_t min_words = 6;
};

/// Top sentences of each document by TF-IDF similarity to `centroid`, in
/// document order, each cited with its own document id.
std::vector<SummarySentence> retrieve_sentences(const std::vector<ClusterDocument>& docs, const SparseVector& centroid,
                                                const TfidfIndex& index, const SummaryOptions& opts = {});

/// Splits backend output into sentences and checks that each carries at
/// least one "[id]" citation and that every cited id is in `members`.
/// Returns nullopt with `reason` set when any sentence fails.
std::optional<std::vector<SummarySentence>> verify_generated(const std::string& output,
                                                             const std::set<std::string>& members, std::string& reason);

std::string build_prompt(const std::vector<SummarySentence>& retrieved);

/// Extractive when `backend` is null; otherwise the backend output is used
/// only if it passes verification, else the extractive sentences are
/// returned with a warning.
Summary summarise(const std::vector<ClusterDocument>& docs, const SparseVector& centroid, const TfidfIndex& index,
                  SummaryBackend* backend = nullptr, const SummaryOptions& opts = {});

struct TopicSection {
    std::size_t cluster = 0;
    std::vector<std::string> labels;
    std::vector<std::string> members;
    Summary summary;
    friend bool operator==(const TopicSection&, const TopicSection&) = default;
};

/// Markdown: one "## Topic" section per cluster with label terms, members and
/// cited summary sentences.
std::string render_report(const std::string& topic, const std::vector<TopicSection>& sections);

}  // namespace litsynth
