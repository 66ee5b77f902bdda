#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace litsynth {

struct ParseResult {
    std::string canonical_id;
    std::string text;
    int page_count = 0;
    std::vector<std::string> extraction_warnings;
    double duration_seconds = 0;

    bool ok() const { return !text.empty(); }
};

inline constexpr const char* kUnparseable = "unparseable";

/// Turns one document format into raw text. Implementations must be safe
/// to call concurrently on distinct files.
class TextBackend {
public:
    virtual ~TextBackend() = default;
    /// Raw (unnormalized) text; may throw on unreadable input.
    virtual std::string extract(const std::string& bytes, int& page_count, std::vector<std::string>& warnings) const = 0;
};

class PlainTextBackend final : public TextBackend {
public:
    std::string extract(const std::string& bytes, int& page_count, std::vector<std::string>& warnings) const override;
};

class PdfBackend final : public TextBackend {
public:
    std::string extract(const std::string& bytes, int& page_count, std::vector<std::string>& warnings) const override;
};

/// Maps lowercase file extensions to backends. Defaults: .txt/.md plain
/// text, .pdf PDF.
class BackendRegistry {
public:
    BackendRegistry();
    void add(std::string extension, std::shared_ptr<const TextBackend> backend);
    const TextBackend* find(const std::filesystem::path& file) const;

private:
    std::map<std::string, std::shared_ptr<const TextBackend>> backends_;
};

/// Ligatures, end-of-line hyphenation, UTF-8 repair and control characters.
/// `warnings` gains "invalid-utf8" when bytes had to be replaced.
std::string normalize_document_text(std::string_view raw, std::vector<std::string>& warnings);

/// Best-effort conversion; never throws for bad documents. Unreadable or
/// corrupt input gives empty text with the "unparseable" warning.
ParseResult pdf_to_text(const std::filesystem::path& document, const BackendRegistry& backends = BackendRegistry{});

}  // namespace litsynth
