#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace litsynth {

enum class Source { arxiv, semantic_scholar, local_file };
enum class PaperStatus { retrieved, parsed, parse_failed, filtered_out, extracted };

std::string_view to_string(Source s);
std::string_view to_string(PaperStatus s);
Source source_from_string(std::string_view s);
PaperStatus status_from_string(std::string_view s);

/// Legal moves: retrieved -> parsed | parse_failed, parsed -> filtered_out | extracted.
bool is_valid_transition(PaperStatus from, PaperStatus to);

class InvalidTransition : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct PaperRecord {
    std::string canonical_id;
    std::string title;
    std::vector<std::string> authors;
    int year = 0;
    std::optional<std::string> venue;
    Source source = Source::local_file;

    // Identity keys used to derive canonical_id.
    std::optional<std::string> doi;
    std::optional<std::string> arxiv_id;
    std::optional<std::string> s2_id;
    std::optional<std::string> local_id;

    std::optional<std::string> abstract;
    std::optional<std::string> document_url;
    std::optional<std::filesystem::path> pdf_path;
    std::optional<std::string> raw_text;
    PaperStatus status = PaperStatus::retrieved;
    /// Reasons this record needs a human look (failed download, bad encoding...).
    std::vector<std::string> review_flags;

    void advance(PaperStatus next);
    /// Number of optional/descriptive fields that carry data; used to pick a
    /// winner among duplicates.
    int populated_field_count() const;

    friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

/// Lowercase, keep only ASCII alphanumerics.
std::string normalize_title(std::string_view title);
std::string title_hash_id(std::string_view title);

/// Precedence: DOI, then arXiv id, then Semantic Scholar id, then local id,
/// then a hash of the normalized title.
std::string derive_canonical_id(const PaperRecord& r);

/// Canonical id made safe for use as a file name.
std::string cache_file_stem(std::string_view canonical_id);

void to_json(nlohmann::json& j, const PaperRecord& r);
void from_json(const nlohmann::json& j, PaperRecord& r);

}  // namespace litsynth
