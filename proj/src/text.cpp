#include "litsynth/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace litsynth {

namespace {

bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

// Length of a valid UTF-8 sequence starting at `p`, or 0 if malformed.
std::size_t utf8_sequence_length(std::string_view s, std::size_t p) {
    const auto b0 = static_cast<unsigned char>(s[p]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (b0 < 0x80) return 1;
    if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
    else return 0;
    if (p + len > s.size()) return 0;
    for (std::size_t i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(s[p + i]);
        if ((b & 0xC0) != 0x80) return 0;
        cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) return 0;
    if (cp >= 0xD800 && cp <= 0xDFFF) return 0;
    if (cp > 0x10FFFF) return 0;
    return len;
}

const std::array<std::string_view, 26> kAbbreviations = {
    "e.g", "i.e", "al", "fig", "figs", "eq", "eqs", "etc", "vs", "dr", "cf", "approx", "sec",
    "no", "tab", "mr", "ms", "prof", "resp", "ref", "refs", "vol", "pp", "ca", "viz", "ed"};

bool ends_with_abbreviation(std::string_view text, std::size_t dot) {
    std::size_t b = dot;
    while (b > 0 && (is_alpha(text[b - 1]) || text[b - 1] == '.')) --b;
    std::string word = to_lower(text.substr(b, dot - b));
    if (word.size() == 1 && std::isupper(static_cast<unsigned char>(text[b]))) return true;  // initials
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

}  // namespace

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && is_space(s[a])) ++a;
    while (b > a && is_space(s[b - 1])) --b;
    return std::string(s.substr(a, b - a));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    }
    return true;
}

std::string sanitize_utf8(std::string_view in, std::size_t* invalid_bytes) {
    std::string out;
    out.reserve(in.size());
    std::size_t invalid = 0;
    for (std::size_t p = 0; p < in.size();) {
        const std::size_t len = utf8_sequence_length(in, p);
        if (len == 0) {
            out += kReplacement;
            ++invalid;
            ++p;
            continue;
        }
        if (len == 1) {
            const char c = in[p];
            const auto u = static_cast<unsigned char>(c);
            if (c == '\n') out += c;
            else if (c == '\t') out += ' ';
            else if (u >= 0x20 && u != 0x7F) out += c;
        } else {
            out.append(in.substr(p, len));
        }
        p += len;
    }
    if (invalid_bytes) *invalid_bytes = invalid;
    return out;
}

std::string normalize_ligatures(std::string_view in) {
    // U+FB00..U+FB06 encode as EF AC 80..86.
    static constexpr std::array<std::string_view, 7> kExpansions = {"ff", "fi", "fl", "ffi", "ffl", "st", "st"};
    std::string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xEF &&
            static_cast<unsigned char>(in[i + 1]) == 0xAC) {
            const auto third = static_cast<unsigned char>(in[i + 2]);
            if (third >= 0x80 && third <= 0x86) {
                out += kExpansions[third - 0x80];
                i += 2;
                continue;
            }
        }
        out += in[i];
    }
    return out;
}

std::string join_hyphenated_linebreaks(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] == '-' && i > 0 && is_alpha(in[i - 1])) {
            std::size_t j = i + 1;
            while (j < in.size() && (in[j] == ' ' || in[j] == '\t')) ++j;
            if (j < in.size() && in[j] == '\n') {
                std::size_t k = j + 1;
                while (k < in.size() && (in[k] == ' ' || in[k] == '\t')) ++k;
                if (k < in.size() && std::islower(static_cast<unsigned char>(in[k]))) {
                    i = k - 1;
                    continue;
                }
            }
        }
        out += in[i];
    }
    return out;
}

std::string fold_for_matching(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const char c = in[i];
        if (c == '-' && i > 0 && i + 1 < in.size() && is_alpha(in[i - 1]) && is_alpha(in[i + 1])) continue;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::vector<Span> split_sentences(std::string_view text) {
    std::vector<Span> out;
    auto emit = [&](std::size_t b, std::size_t e) {
        while (b < e && is_space(text[b])) ++b;
        while (e > b && is_space(text[e - 1])) --e;
        if (e > b) out.push_back({b, e});
    };
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            std::size_t j = i + 1;
            while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
            if (j < text.size() && text[j] == '\n') {
                emit(start, i);
                start = j;
                i = j;
            }
            continue;
        }
        if (c != '.' && c != '?' && c != '!') continue;
        std::size_t j = i + 1;
        while (j < text.size() && (text[j] == '"' || text[j] == '\'' || text[j] == ')')) ++j;
        if (j >= text.size() || !is_space(text[j])) continue;
        std::size_t k = j;
        while (k < text.size() && is_space(text[k])) ++k;
        if (k >= text.size()) continue;
        if (!std::isupper(static_cast<unsigned char>(text[k]))) continue;
        if (c == '.' && ends_with_abbreviation(text, i)) continue;
        emit(start, j);
        start = k;
        i = k - 1;
    }
    emit(start, text.size());
    return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (is_alnum(c)) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
        v >>= 4;
    }
    return out;
}

std::string format_number(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace litsynth
