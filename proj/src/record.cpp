#include "litsynth/record.hpp"

#include <cctype>

#include "litsynth/text.hpp"

namespace litsynth {

std::string_view to_string(Source s) {
    switch (s) {
        case Source::arxiv: return "arxiv";
        case Source::semantic_scholar: return "semantic_scholar";
        case Source::local_file: return "local_file";
    }
    return "local_file";
}

std::string_view to_string(PaperStatus s) {
    switch (s) {
        case PaperStatus::retrieved: return "retrieved";
        case PaperStatus::parsed: return "parsed";
        case PaperStatus::parse_failed: return "parse_failed";
        case PaperStatus::filtered_out: return "filtered_out";
        case PaperStatus::extracted: return "extracted";
    }
    return "retrieved";
}

Source source_from_string(std::string_view s) {
    if (s == "arxiv") return Source::arxiv;
    if (s == "semantic_scholar") return Source::semantic_scholar;
    if (s == "local_file") return Source::local_file;
    throw std::invalid_argument("unknown source: " + std::string(s));
}

PaperStatus status_from_string(std::string_view s) {
    for (auto st : {PaperStatus::retrieved, PaperStatus::parsed, PaperStatus::parse_failed,
                    PaperStatus::filtered_out, PaperStatus::extracted}) {
        if (to_string(st) == s) return st;
    }
    throw std::invalid_argument("unknown status: " + std::string(s));
}

bool is_valid_transition(PaperStatus from, PaperStatus to) {
    switch (from) {
        case PaperStatus::retrieved: return to == PaperStatus::parsed || to == PaperStatus::parse_failed;
        case PaperStatus::parsed: return to == PaperStatus::filtered_out || to == PaperStatus::extracted;
        default: return false;
    }
}

void PaperRecord::advance(PaperStatus next) {
    if (!is_valid_transition(status, next)) {
        throw InvalidTransition(canonical_id + ": " + std::string(to_string(status)) + " -> " +
                                std::string(to_string(next)));
    }
    status = next;
}

int PaperRecord::populated_field_count() const {
    int n = 0;
    n += !title.empty();
    n += !authors.empty();
    n += year != 0;
    n += venue.has_value();
    n += doi.has_value();
    n += arxiv_id.has_value();
    n += s2_id.has_value();
    n += local_id.has_value();
    n += abstract.has_value();
    n += document_url.has_value();
    n += pdf_path.has_value();
    n += raw_text.has_value();
    return n;
}

std::string normalize_title(std::string_view title) {
    std::string out;
    for (char c : title) {
        if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string title_hash_id(std::string_view title) { return "title:" + hex64(fnv1a64(normalize_title(title))); }

std::string derive_canonical_id(const PaperRecord& r) {
    if (r.doi && !r.doi->empty()) return "doi:" + to_lower(*r.doi);
    if (r.arxiv_id && !r.arxiv_id->empty()) return "arxiv:" + *r.arxiv_id;
    if (r.s2_id && !r.s2_id->empty()) return "s2:" + *r.s2_id;
    if (r.local_id && !r.local_id->empty()) return "local:" + *r.local_id;
    return title_hash_id(r.title);
}

std::string cache_file_stem(std::string_view canonical_id) {
    std::string out;
    for (char c : canonical_id) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
        out += keep ? c : '_';
    }
    return out;
}

namespace {
template <typename T>
void put_opt(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}
template <typename T>
void get_opt(const nlohmann::json& j, const char* key, std::optional<T>& v) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) v = it->get<T>();
}
}  // namespace

void to_json(nlohmann::json& j, const PaperRecord& r) {
    j = nlohmann::json::object();
    j["canonical_id"] = r.canonical_id;
    j["title"] = r.title;
    j["authors"] = r.authors;
    j["year"] = r.year;
    j["source"] = to_string(r.source);
    j["status"] = to_string(r.status);
    put_opt(j, "venue", r.venue);
    put_opt(j, "doi", r.doi);
    put_opt(j, "arxiv_id", r.arxiv_id);
    put_opt(j, "s2_id", r.s2_id);
    put_opt(j, "local_id", r.local_id);
    put_opt(j, "abstract", r.abstract);
    put_opt(j, "document_url", r.document_url);
    if (r.pdf_path) j["pdf_path"] = r.pdf_path->generic_string();
    put_opt(j, "raw_text", r.raw_text);
    if (!r.review_flags.empty()) j["review_flags"] = r.review_flags;
}

void from_json(const nlohmann::json& j, PaperRecord& r) {
    r = PaperRecord{};
    r.canonical_id = j.at("canonical_id").get<std::string>();
    r.title = j.value("title", "");
    r.authors = j.value("authors", std::vector<std::string>{});
    r.year = j.value("year", 0);
    r.source = source_from_string(j.value("source", "local_file"));
    r.status = status_from_string(j.value("status", "retrieved"));
    get_opt(j, "venue", r.venue);
    get_opt(j, "doi", r.doi);
    get_opt(j, "arxiv_id", r.arxiv_id);
    get_opt(j, "s2_id", r.s2_id);
    get_opt(j, "local_id", r.local_id);
    get_opt(j, "abstract", r.abstract);
    get_opt(j, "document_url", r.document_url);
    if (auto it = j.find("pdf_path"); it != j.end()) r.pdf_path = std::filesystem::path(it->get<std::string>());
    get_opt(j, "raw_text", r.raw_text);
    r.review_flags = j.value("review_flags", std::vector<std::string>{});
}

}  // namespace litsynth
