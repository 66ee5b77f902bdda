#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace litsynth::pdf {

class PdfError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExtractedText {
    std::string text;
    int page_count = 0;
    std::vector<std::string> warnings;
};

/// Best-effort text recovery from the page content streams of a PDF.
/// Supports Flate, ASCII85 and ASCIIHex stream filters, cross-reference
/// object streams, and simple (single byte) font encodings. Throws PdfError
/// when the input is not a PDF at all.
ExtractedText extract_text(std::string_view bytes);

/// Writes a minimal PDF with one Helvetica text block per page. Each page
/// is a list of lines; empty lines become paragraph breaks when read back.
std::string write_text_pdf(const std::vector<std::vector<std::string>>& pages, bool compress = true);

/// Wraps paragraphs at `width` characters and paginates at `lines_per_page`.
std::vector<std::vector<std::string>> layout_pages(std::string_view text, std::size_t width = 90,
                                                   std::size_t lines_per_page = 54);

std::string inflate(std::string_view compressed);
std::string deflate(std::string_view raw);

}  // namespace litsynth::pdf
