#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "litsynth/http.hpp"
#include "litsynth/record.hpp"

namespace litsynth {

struct YearRange {
    int min = 1900;
    int max = 2100;
    bool contains(int year) const { return year >= min && year <= max; }
};

struct RateLimit {
    std::chrono::milliseconds interval{3000};
    int burst = 1;
};

/// Token bucket shared by all requests to one source.
class TokenBucket {
public:
    explicit TokenBucket(RateLimit limit);
    /// Blocks until a token is available.
    void acquire();

private:
    RateLimit limit_;
    double tokens_;
    std::chrono::steady_clock::time_point last_;
    std::mutex mu_;
};

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds base_delay{1000};
};

/// GET with bounded retries on transport errors, 429 and 5xx. Other
/// statuses are returned as-is. Throws HttpError once attempts run out.
HttpResponse get_with_retry(HttpClient& client, const std::string& url, const RetryPolicy& retry,
                            TokenBucket* bucket = nullptr);

struct SourceConfig {
    std::string base_url;
    std::size_t page_size = 100;
    std::size_t max_results = 1000;
    RateLimit rate;
    RetryPolicy retry;
    /// Directory scanned by the local_file source.
    std::filesystem::path local_dir;
};

SourceConfig default_source_config(Source source);

/// A source failed after retries; `partial` holds what was retrieved before.
class SourceError : public std::runtime_error {
public:
    SourceError(Source source, const std::string& what, std::vector<PaperRecord> partial)
        : std::runtime_error(what), source_(source), partial_(std::move(partial)) {}
    Source source() const { return source_; }
    const std::vector<PaperRecord>& partial() const { return partial_; }

private:
    Source source_;
    std::vector<PaperRecord> partial_;
};

struct SearchLog {
    std::vector<std::string> skipped;
    std::size_t requests = 0;
};

std::string arxiv_query_url(const SourceConfig& cfg, const std::string& query, YearRange years, std::size_t start);
std::string semantic_scholar_query_url(const SourceConfig& cfg, const std::string& query, YearRange years,
                                       std::size_t offset);

/// Parses one page of results. Malformed entries are skipped and noted in
/// `log`. Returns the number of raw entries on the page (valid or not).
std::size_t parse_arxiv_feed(const std::string& body, std::vector<PaperRecord>& out, SearchLog* log);
std::size_t parse_semantic_scholar_page(const std::string& body, std::vector<PaperRecord>& out, SearchLog* log,
                                        bool* has_next);

/// Retrieves candidate papers for `query` from one source, paging until the
/// source is exhausted or `max_results` is reached. API results outside
/// `years` are dropped. Records come back with status=retrieved.
std::vector<PaperRecord> search_api(HttpClient& client, const std::string& query, YearRange years, Source source,
                                    const SourceConfig& cfg, SearchLog* log = nullptr);

/// Documents (.txt, .pdf) in a directory as local_file records. When the
/// directory holds a manifest, the manifest is authoritative.
std::vector<PaperRecord> scan_local_directory(const std::filesystem::path& dir);

/// Merges records that share a DOI, arXiv id, Semantic Scholar id or
/// normalized title. The most populated record wins and borrows missing
/// fields from the others. Output is sorted by canonical_id.
std::vector<PaperRecord> deduplicate(std::vector<PaperRecord> records);

/// Ensures the record's document is in `cache_dir`. Cached files are reused
/// without network traffic. Download failures leave the status untouched and
/// add a review flag.
PaperRecord fetch_document(PaperRecord record, const std::filesystem::path& cache_dir, HttpClient& client,
                           const RetryPolicy& retry = {});

inline constexpr const char* kManifestName = "manifest.jsonl";

/// One record per line, sorted by canonical_id. Document paths inside the
/// cache directory are stored relative to it.
void write_manifest(const std::filesystem::path& cache_dir, std::vector<PaperRecord> records);
std::vector<PaperRecord> read_manifest(const std::filesystem::path& cache_dir);

}  // namespace litsynth
