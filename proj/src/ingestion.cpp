#include "litsynth/ingestion.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "litsynth/text.hpp"

namespace litsynth {

namespace fs = std::filesystem;
using nlohmann::json;

TokenBucket::TokenBucket(RateLimit limit)
    : limit_(limit), tokens_(static_cast<double>(std::max(1, limit.burst))), last_(std::chrono::steady_clock::now()) {}

void TokenBucket::acquire() {
    std::unique_lock lock(mu_);
    if (limit_.interval.count() <= 0) return;
    const double capacity = std::max(1, limit_.burst);
    for (;;) {
        const auto now = std::chrono::steady_clock::now();
        const double elapsed = std::chrono::duration<double, std::milli>(now - last_).count();
        tokens_ = std::min(capacity, tokens_ + elapsed / static_cast<double>(limit_.interval.count()));
        last_ = now;
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        const double wait_ms = (1.0 - tokens_) * static_cast<double>(limit_.interval.count());
        std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(wait_ms));
    }
}

HttpResponse get_with_retry(HttpClient& client, const std::string& url, const RetryPolicy& retry,
                            TokenBucket* bucket) {
    const int attempts = std::max(1, retry.attempts);
    std::string last_error;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(retry.base_delay * (1 << (attempt - 1)));
        if (bucket) bucket->acquire();
        try {
            auto res = client.get(url);
            if (res.status == 429 || res.status >= 500) {
                last_error = "HTTP " + std::to_string(res.status);
                continue;
            }
            return res;
        } catch (const HttpError& e) {
            last_error = e.what();
        }
        spdlog::debug("retrying {} ({})", url, last_error);
    }
    throw HttpError(url + " failed after " + std::to_string(attempts) + " attempts: " + last_error);
}

SourceConfig default_source_config(Source source) {
    SourceConfig cfg;
    switch (source) {
        case Source::arxiv: cfg.base_url = "https://export.arxiv.org/api/query"; break;
        case Source::semantic_scholar: cfg.base_url = "https://api.semanticscholar.org/graph/v1/paper/search"; break;
        case Source::local_file: break;
    }
    return cfg;
}

std::string arxiv_query_url(const SourceConfig& cfg, const std::string& query, YearRange years, std::size_t start) {
    std::ostringstream q;
    q << "all:\"" << query << "\" AND submittedDate:[" << years.min << "01010000 TO " << years.max << "12312359]";
    std::ostringstream url;
    url << cfg.base_url << "?search_query=" << url_encode(q.str()) << "&start=" << start
        << "&max_results=" << cfg.page_size << "&sortBy=submittedDate&sortOrder=ascending";
    return url.str();
}

std::string semantic_scholar_query_url(const SourceConfig& cfg, const std::string& query, YearRange years,
                                       std::size_t offset) {
    std::ostringstream url;
    url << cfg.base_url << "?query=" << url_encode(query) << "&year=" << years.min << "-" << years.max
        << "&offset=" << offset << "&limit=" << cfg.page_size
        << "&fields=title,authors,year,venue,externalIds,abstract,openAccessPdf";
    return url.str();
}

namespace {

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            space = true;
            continue;
        }
        if (space && !out.empty()) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

std::optional<int> parse_year(std::string_view s) {
    if (s.size() < 4) return std::nullopt;
    int y = 0;
    for (int i = 0; i < 4; ++i) {
        if (s[static_cast<std::size_t>(i)] < '0' || s[static_cast<std::size_t>(i)] > '9') return std::nullopt;
        y = y * 10 + (s[static_cast<std::size_t>(i)] - '0');
    }
    return y;
}

std::string strip_arxiv_version(std::string id) {
    const auto v = id.rfind('v');
    if (v != std::string::npos && v + 1 < id.size() &&
        std::all_of(id.begin() + static_cast<long>(v) + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; }))
        id.erase(v);
    return id;
}

void note_skip(SearchLog* log, const std::string& what) {
    spdlog::warn("skipping malformed entry: {}", what);
    if (log) log->skipped.push_back(what);
}

}  // namespace

std::size_t parse_arxiv_feed(const std::string& body, std::vector<PaperRecord>& out, SearchLog* log) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(body);
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw std::runtime_error(std::string("malformed arXiv feed: ") + e.what());
    }
    std::size_t entries = 0;
    const auto feed = tree.get_child_optional("feed");
    if (!feed) throw std::runtime_error("malformed arXiv feed: no <feed> element");
    for (const auto& [tag, entry] : *feed) {
        if (tag != "entry") continue;
        ++entries;
        const auto id_url = entry.get<std::string>("id", "");
        const auto title = collapse_whitespace(entry.get<std::string>("title", ""));
        const auto year = parse_year(entry.get<std::string>("published", ""));
        const auto slash = id_url.find("/abs/");
        if (slash == std::string::npos || title.empty() || !year) {
            note_skip(log, "arxiv entry '" + id_url + "'");
            continue;
        }
        PaperRecord r;
        r.source = Source::arxiv;
        r.arxiv_id = strip_arxiv_version(id_url.substr(slash + 5));
        r.title = title;
        r.year = *year;
        for (const auto& [ctag, child] : entry) {
            if (ctag == "author") {
                if (auto name = child.get_optional<std::string>("name")) r.authors.push_back(collapse_whitespace(*name));
            } else if (ctag == "link") {
                if (child.get<std::string>("<xmlattr>.title", "") == "pdf")
                    r.document_url = child.get<std::string>("<xmlattr>.href", "");
            }
        }
        if (auto doi = entry.get_optional<std::string>("arxiv:doi")) r.doi = collapse_whitespace(*doi);
        if (auto venue = entry.get_optional<std::string>("arxiv:journal_ref")) r.venue = collapse_whitespace(*venue);
        if (auto summary = entry.get_optional<std::string>("summary")) r.abstract = collapse_whitespace(*summary);
        r.canonical_id = derive_canonical_id(r);
        out.push_back(std::move(r));
    }
    return entries;
}

std::size_t parse_semantic_scholar_page(const std::string& body, std::vector<PaperRecord>& out, SearchLog* log,
                                        bool* has_next) {
    json page;
    try {
        page = json::parse(body);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("malformed Semantic Scholar page: ") + e.what());
    }
    if (has_next) *has_next = page.contains("next") && page["next"].is_number();
    const auto data = page.find("data");
    if (data == page.end() || !data->is_array()) return 0;
    for (const auto& item : *data) {
        const bool ok = item.is_object() && item.contains("paperId") && item["paperId"].is_string() &&
                        item.contains("title") && item["title"].is_string() && item.contains("year") &&
                        item["year"].is_number_integer();
        if (!ok) {
            note_skip(log, "semantic_scholar entry " + (item.is_object() ? item.value("paperId", std::string("?")) : "?"));
            continue;
        }
        PaperRecord r;
        r.source = Source::semantic_scholar;
        r.s2_id = item["paperId"].get<std::string>();
        r.title = collapse_whitespace(item["title"].get<std::string>());
        r.year = item["year"].get<int>();
        if (auto it = item.find("authors"); it != item.end() && it->is_array()) {
            for (const auto& a : *it)
                if (a.is_object() && a.contains("name") && a["name"].is_string()) r.authors.push_back(a["name"]);
        }
        if (auto it = item.find("venue"); it != item.end() && it->is_string() && !it->get<std::string>().empty())
            r.venue = it->get<std::string>();
        if (auto it = item.find("abstract"); it != item.end() && it->is_string()) r.abstract = it->get<std::string>();
        if (auto it = item.find("externalIds"); it != item.end() && it->is_object()) {
            if (it->contains("DOI") && (*it)["DOI"].is_string()) r.doi = (*it)["DOI"].get<std::string>();
            if (it->contains("ArXiv") && (*it)["ArXiv"].is_string()) r.arxiv_id = (*it)["ArXiv"].get<std::string>();
        }
        if (auto it = item.find("openAccessPdf"); it != item.end() && it->is_object() && it->contains("url") &&
                                                   (*it)["url"].is_string())
            r.document_url = (*it)["url"].get<std::string>();
        r.canonical_id = derive_canonical_id(r);
        out.push_back(std::move(r));
    }
    return data->size();
}

std::vector<PaperRecord> search_api(HttpClient& client, const std::string& query, YearRange years, Source source,
                                    const SourceConfig& cfg, SearchLog* log) {
    if (trim(query).empty()) throw std::invalid_argument("search query must be non-empty");
    if (source == Source::local_file) return scan_local_directory(cfg.local_dir);

    TokenBucket bucket(cfg.rate);
    std::vector<PaperRecord> records;
    std::size_t offset = 0;
    for (;;) {
        const auto url = source == Source::arxiv ? arxiv_query_url(cfg, query, years, offset)
                                                 : semantic_scholar_query_url(cfg, query, years, offset);
        HttpResponse res;
        try {
            res = get_with_retry(client, url, cfg.retry, &bucket);
            if (log) ++log->requests;
            if (res.status != 200) throw HttpError(url + ": HTTP " + std::to_string(res.status));
        } catch (const HttpError& e) {
            throw SourceError(source, e.what(), std::move(records));
        }
        std::size_t on_page = 0;
        bool has_next = true;
        try {
            on_page = source == Source::arxiv ? parse_arxiv_feed(res.body, records, log)
                                              : parse_semantic_scholar_page(res.body, records, log, &has_next);
        } catch (const std::runtime_error& e) {
            throw SourceError(source, e.what(), std::move(records));
        }
        offset += on_page;
        if (on_page == 0 || on_page < cfg.page_size || !has_next || offset >= cfg.max_results) break;
    }
    std::erase_if(records, [&](const PaperRecord& r) { return !years.contains(r.year); });
    if (records.size() > cfg.max_results) records.resize(cfg.max_results);
    return records;
}

std::vector<PaperRecord> scan_local_directory(const fs::path& dir) {
    if (fs::exists(dir / kManifestName)) return read_manifest(dir);
    std::vector<PaperRecord> out;
    if (!fs::is_directory(dir)) return out;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const auto ext = to_lower(e.path().extension().string());
        if (ext == ".txt" || ext == ".pdf" || ext == ".md") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        PaperRecord r;
        r.source = Source::local_file;
        r.local_id = f.stem().string();
        r.pdf_path = f;
        if (to_lower(f.extension().string()) != ".pdf") {
            std::ifstream in(f);
            std::string line;
            while (std::getline(in, line)) {
                if (!trim(line).empty()) {
                    r.title = trim(line);
                    break;
                }
            }
        }
        r.canonical_id = derive_canonical_id(r);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::string> identity_keys(const PaperRecord& r) {
    std::vector<std::string> keys;
    if (r.doi && !r.doi->empty()) keys.push_back("doi:" + to_lower(*r.doi));
    if (r.arxiv_id && !r.arxiv_id->empty()) keys.push_back("arxiv:" + *r.arxiv_id);
    if (r.s2_id && !r.s2_id->empty()) keys.push_back("s2:" + *r.s2_id);
    if (r.local_id && !r.local_id->empty()) keys.push_back("local:" + *r.local_id);
    if (!normalize_title(r.title).empty()) keys.push_back(title_hash_id(r.title));
    return keys;
}

template <typename T>
void fill(std::optional<T>& dst, const std::optional<T>& src) {
    if (!dst && src) dst = src;
}

}  // namespace

std::vector<PaperRecord> deduplicate(std::vector<PaperRecord> records) {
    DisjointSet sets(records.size());
    std::map<std::string, std::size_t> first_owner;
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const auto& key : identity_keys(records[i])) {
            auto [it, inserted] = first_owner.emplace(key, i);
            if (!inserted) sets.unite(it->second, i);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < records.size(); ++i) groups[sets.find(i)].push_back(i);

    std::vector<PaperRecord> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            const auto& ra = records[a];
            const auto& rb = records[b];
            if (ra.populated_field_count() != rb.populated_field_count())
                return ra.populated_field_count() > rb.populated_field_count();
            if (ra.source != rb.source) return ra.source < rb.source;
            return derive_canonical_id(ra) < derive_canonical_id(rb);
        });
        PaperRecord merged = records[members.front()];
        for (std::size_t m = 1; m < members.size(); ++m) {
            const auto& other = records[members[m]];
            if (merged.title.empty()) merged.title = other.title;
            if (merged.authors.empty()) merged.authors = other.authors;
            if (merged.year == 0) merged.year = other.year;
            fill(merged.venue, other.venue);
            fill(merged.doi, other.doi);
            fill(merged.arxiv_id, other.arxiv_id);
            fill(merged.s2_id, other.s2_id);
            fill(merged.local_id, other.local_id);
            fill(merged.abstract, other.abstract);
            fill(merged.document_url, other.document_url);
            fill(merged.pdf_path, other.pdf_path);
            fill(merged.raw_text, other.raw_text);
            for (const auto& f : other.review_flags)
                if (std::find(merged.review_flags.begin(), merged.review_flags.end(), f) == merged.review_flags.end())
                    merged.review_flags.push_back(f);
        }
        merged.canonical_id = derive_canonical_id(merged);
        out.push_back(std::move(merged));
    }
    std::sort(out.begin(), out.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.canonical_id < b.canonical_id; });
    return out;
}

PaperRecord fetch_document(PaperRecord record, const fs::path& cache_dir, HttpClient& client,
                           const RetryPolicy& retry) {
    if (record.pdf_path && fs::exists(*record.pdf_path)) return record;
    const auto cached = cache_dir / (cache_file_stem(record.canonical_id) + ".pdf");
    if (fs::exists(cached)) {
        record.pdf_path = cached;
        return record;
    }
    auto flag = [&](const std::string& why) {
        spdlog::warn("{}: {} (flagged for manual review)", record.canonical_id, why);
        record.review_flags.push_back("download_failed: " + why);
        return record;
    };
    if (!record.document_url || record.document_url->empty()) return flag("no document url");
    try {
        const auto res = get_with_retry(client, *record.document_url, retry);
        if (res.status != 200) return flag("HTTP " + std::to_string(res.status));
        write_file_atomic(cached, res.body);
        record.pdf_path = cached;
    } catch (const HttpError& e) {
        return flag(e.what());
    }
    return record;
}

void write_manifest(const fs::path& cache_dir, std::vector<PaperRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.canonical_id < b.canonical_id; });
    std::string body;
    for (auto r : records) {
        if (r.pdf_path) {
            const auto rel = r.pdf_path->lexically_relative(cache_dir);
            if (!rel.empty() && *rel.begin() != "..") r.pdf_path = rel;
        }
        r.raw_text.reset();
        body += json(r).dump();
        body += '\n';
    }
    write_file_atomic(cache_dir / kManifestName, body);
}

std::vector<PaperRecord> read_manifest(const fs::path& cache_dir) {
    std::ifstream in(cache_dir / kManifestName);
    if (!in) throw std::runtime_error("cannot open manifest in " + cache_dir.string());
    std::vector<PaperRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        PaperRecord r;
        try {
            r = json::parse(line).get<PaperRecord>();
        } catch (const std::exception& e) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) + ": " + e.what());
        }
        if (r.pdf_path && r.pdf_path->is_relative()) r.pdf_path = cache_dir / *r.pdf_path;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace litsynth
