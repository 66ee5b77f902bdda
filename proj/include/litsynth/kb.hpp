#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "litsynth/facts.hpp"
#include "litsynth/record.hpp"

namespace litsynth {

struct KbEntry {
    PaperRecord record;  // stored without raw_text
    FactBundle facts;
    friend bool operator==(const KbEntry&, const KbEntry&) = default;
};

struct ResultRow {
    std::string paper_id;
    std::string model;  // architecture fact if present, else the paper title
    std::string dataset;
    std::string metric;
    double value = 0;
    std::optional<Split> split;
    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct Aggregates {
    std::vector<ResultRow> results;  // sorted by metric, dataset, value, paper
    /// name -> (value, count), values sorted numerically before strings.
    std::map<std::string, std::vector<std::pair<FactValue, std::size_t>>> histograms;
    friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

enum class QueryKind { facts_by_name, papers_by_metric_threshold, value_histogram, free_lookup };
enum class Comparator { lt, le, eq, ge, gt };

std::optional<QueryKind> query_kind_from_string(std::string_view s);
/// "<", "<=", "≤", "=", ">=", "≥", ">".
std::optional<Comparator> comparator_from_string(std::string_view s);

struct Query {
    QueryKind kind = QueryKind::free_lookup;
    std::string name;  // hyperparameter name, metric name or lookup text
    Comparator comparator = Comparator::lt;
    double threshold = 0;
    std::optional<std::string> dataset;
};

class KbConflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class KbFormatError : public std::runtime_error {
public:
    KbFormatError(std::size_t line, const std::string& detail, const std::string& source = {})
        : std::runtime_error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " + detail),
          line_(line),
          detail_(detail) {}
    std::size_t line() const { return line_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

/// File format: UTF-8 JSON lines. The first line is the header
/// {"format":"litsynth-kb","version":1}; every further line is one entry
/// {"record":{...},"facts":{...}}, sorted by canonical id.
class KnowledgeBase {
public:
    KnowledgeBase() = default;
    KnowledgeBase(const KnowledgeBase& other);
    KnowledgeBase& operator=(const KnowledgeBase& other);

    /// Safe for concurrent callers. Identical re-append is a no-op; different
    /// content for a stored id throws KbConflict unless `overwrite`.
    void append(PaperRecord record, FactBundle facts, bool overwrite = false);

    std::optional<KbEntry> lookup(const std::string& canonical_id) const;
    std::size_t size() const;
    std::vector<KbEntry> entries() const;  // sorted by id

    /// Tables are rebuilt lazily after appends. Requires quiescence.
    const Aggregates& aggregate() const;
    std::vector<nlohmann::json> query(const Query& q) const;

    std::string serialize() const;
    void persist(const std::filesystem::path& path) const;
    static KnowledgeBase parse(std::string_view contents);
    static KnowledgeBase load(const std::filesystem::path& path);

    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) { return a.entries() == b.entries(); }

private:
    mutable std::mutex mutex_;
    std::map<std::string, KbEntry> entries_;
    mutable std::optional<Aggregates> aggregates_;
};

/// Aggregates computed from scratch; KnowledgeBase::aggregate must equal this.
Aggregates build_aggregates(const std::vector<KbEntry>& entries);

}  // namespace litsynth
