#include "litsynth/parse.hpp"

#include <chrono>
#include <fstream>

#include "litsynth/pdf.hpp"
#include "litsynth/text.hpp"

namespace litsynth {

std::string PlainTextBackend::extract(const std::string& bytes, int& page_count, std::vector<std::string>&) const {
    page_count = bytes.empty() ? 0 : 1;
    return bytes;
}

std::string PdfBackend::extract(const std::string& bytes, int& page_count, std::vector<std::string>& warnings) const {
    auto result = pdf::extract_text(bytes);
    page_count = result.page_count;
    for (auto& w : result.warnings) warnings.push_back("pdf: " + w);
    return std::move(result.text);
}

BackendRegistry::BackendRegistry() {
    auto plain = std::make_shared<PlainTextBackend>();
    add(".txt", plain);
    add(".md", plain);
    add(".pdf", std::make_shared<PdfBackend>());
}

void BackendRegistry::add(std::string extension, std::shared_ptr<const TextBackend> backend) {
    backends_[to_lower(extension)] = std::move(backend);
}

const TextBackend* BackendRegistry::find(const std::filesystem::path& file) const {
    auto it = backends_.find(to_lower(file.extension().string()));
    if (it != backends_.end()) return it->second.get();
    return nullptr;  // caller sniffs the content
}

std::string normalize_document_text(std::string_view raw, std::vector<std::string>& warnings) {
    std::size_t invalid = 0;
    std::string text = sanitize_utf8(raw, &invalid);
    if (invalid > 0) warnings.push_back("invalid-utf8: " + std::to_string(invalid) + " byte(s) replaced");
    text = normalize_ligatures(text);
    return join_hyphenated_linebreaks(text);
}

ParseResult pdf_to_text(const std::filesystem::path& document, const BackendRegistry& backends) {
    const auto started = std::chrono::steady_clock::now();
    ParseResult result;
    auto finish = [&]() {
        if (result.text.empty() && result.extraction_warnings.empty())
            result.extraction_warnings.emplace_back(kUnparseable);
        result.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return result;
    };
    std::string bytes;
    try {
        bytes = read_file(document);
    } catch (const std::exception& e) {
        result.extraction_warnings.emplace_back(kUnparseable);
        result.extraction_warnings.push_back(e.what());
        return finish();
    }
    if (bytes.empty()) {
        result.extraction_warnings.emplace_back(kUnparseable);
        result.extraction_warnings.emplace_back("empty file");
        return finish();
    }
    const TextBackend* backend = backends.find(document);
    if (!backend) {
        static const PdfBackend pdf_backend;
        static const PlainTextBackend plain_backend;
        backend = bytes.rfind("%PDF-", 0) == 0 ? static_cast<const TextBackend*>(&pdf_backend) : &plain_backend;
    }
    std::vector<std::string> warnings;
    std::string raw;
    try {
        raw = backend->extract(bytes, result.page_count, warnings);
    } catch (const std::exception& e) {
        result.extraction_warnings.emplace_back(kUnparseable);
        result.extraction_warnings.push_back(e.what());
        return finish();
    }
    result.text = normalize_document_text(raw, warnings);
    if (trim(result.text).empty()) {
        result.text.clear();
        warnings.insert(warnings.begin(), kUnparseable);
    }
    result.extraction_warnings = std::move(warnings);
    return finish();
}

}  // namespace litsynth
