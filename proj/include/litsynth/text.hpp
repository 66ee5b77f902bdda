#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace litsynth {

/// Half-open byte range [begin, end) into a document's text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool overlaps(const Span& other) const { return begin < other.end && other.begin < end; }
    bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
    friend bool operator==(const Span&, const Span&) = default;
    friend auto operator<=>(const Span&, const Span&) = default;
};

inline std::string_view slice(std::string_view text, Span s) {
    return text.substr(s.begin, s.end - s.begin);
}

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with_icase(std::string_view s, std::string_view prefix);

/// Replaces malformed UTF-8 with U+FFFD and strips control characters other
/// than newline (tabs become spaces, carriage returns are dropped).
/// `invalid_bytes` receives the number of malformed sequences replaced.
std::string sanitize_utf8(std::string_view in, std::size_t* invalid_bytes = nullptr);

/// Maps typographic ligatures (U+FB00..U+FB06) to their ASCII spellings.
std::string normalize_ligatures(std::string_view in);

/// Joins words split by an end-of-line hyphen ("exam-\nple" -> "example").
std::string join_hyphenated_linebreaks(std::string_view in);

/// Lowercases and removes hyphens that sit between two letters
/// ("Auto-Regressive" -> "autoregressive"). Used for keyword matching.
std::string fold_for_matching(std::string_view in);

/// Sentence boundaries: terminal punctuation followed by whitespace and an
/// uppercase letter, or a blank line. Abbreviations such as "e.g." and
/// "et al." never end a sentence. Returned spans are trimmed.
std::vector<Span> split_sentences(std::string_view text);

/// Lowercase alphanumeric tokens.
std::vector<std::string> tokenize_words(std::string_view text);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

/// Canonical text form of a number: integral values without a fraction,
/// everything else in the shortest round-trip representation.
std::string format_number(double v);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace litsynth
