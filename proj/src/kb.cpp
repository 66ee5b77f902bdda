#include "litsynth/kb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "litsynth/text.hpp"

namespace litsynth {

namespace {

constexpr const char* kFormat = "litsynth-kb";
constexpr int kVersion = 1;

bool value_less(const FactValue& a, const FactValue& b) {
    if (a.index() != b.index()) return a.index() < b.index();  // numbers first
    if (const auto* x = std::get_if<double>(&a)) return *x < std::get<double>(b);
    return std::get<std::string>(a) < std::get<std::string>(b);
}

FactValue histogram_key(const FactValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return to_lower(*s);
    return v;
}

nlohmann::json value_json(const FactValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    return std::get<std::string>(v);
}

bool compare(double value, Comparator c, double threshold) {
    switch (c) {
        case Comparator::lt: return value < threshold;
        case Comparator::le: return value <= threshold;
        case Comparator::eq: return value == threshold;
        case Comparator::ge: return value >= threshold;
        case Comparator::gt: return value > threshold;
    }
    return false;
}

std::string first_difference(const KbEntry& a, const KbEntry& b) {
    const nlohmann::json ja = {{"record", a.record}, {"facts", a.facts}};
    const nlohmann::json jb = {{"record", b.record}, {"facts", b.facts}};
    const auto patch = nlohmann::json::diff(ja, jb);
    if (patch.empty()) return "unknown field";
    return patch.front().value("path", std::string("?"));
}

}  // namespace

std::optional<QueryKind> query_kind_from_string(std::string_view s) {
    if (s == "facts_by_name") return QueryKind::facts_by_name;
    if (s == "papers_by_metric_threshold") return QueryKind::papers_by_metric_threshold;
    if (s == "value_histogram") return QueryKind::value_histogram;
    if (s == "free_lookup") return QueryKind::free_lookup;
    return std::nullopt;
}

std::optional<Comparator> comparator_from_string(std::string_view s) {
    if (s == "<") return Comparator::lt;
    if (s == "<=" || s == "\xE2\x89\xA4") return Comparator::le;
    if (s == "=" || s == "==") return Comparator::eq;
    if (s == ">=" || s == "\xE2\x89\xA5") return Comparator::ge;
    if (s == ">") return Comparator::gt;
    return std::nullopt;
}

KnowledgeBase::KnowledgeBase(const KnowledgeBase& other) {
    std::lock_guard lock(other.mutex_);
    entries_ = other.entries_;
}

KnowledgeBase& KnowledgeBase::operator=(const KnowledgeBase& other) {
    if (this == &other) return *this;
    std::scoped_lock lock(mutex_, other.mutex_);
    entries_ = other.entries_;
    aggregates_.reset();
    return *this;
}

void KnowledgeBase::append(PaperRecord record, FactBundle facts, bool overwrite) {
    record.raw_text.reset();
    KbEntry entry{std::move(record), std::move(facts)};
    const std::string id = entry.record.canonical_id;
    if (id.empty()) throw std::invalid_argument("cannot store a record without canonical_id");
    std::lock_guard lock(mutex_);
    auto it = entries_.find(id);
    if (it != entries_.end()) {
        if (it->second == entry) return;
        if (!overwrite)
            throw KbConflict("conflicting content for " + id + " at " + first_difference(it->second, entry) +
                             " (stored vs new); rerun with overwrite to replace");
        it->second = std::move(entry);
    } else {
        entries_.emplace(id, std::move(entry));
    }
    aggregates_.reset();
}

std::optional<KbEntry> KnowledgeBase::lookup(const std::string& canonical_id) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(canonical_id);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::size_t KnowledgeBase::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::vector<KbEntry> KnowledgeBase::entries() const {
    std::lock_guard lock(mutex_);
    std::vector<KbEntry> out;
    out.reserve(entries_.size());
    for (const auto& [id, e] : entries_) out.push_back(e);
    return out;
}

Aggregates build_aggregates(const std::vector<KbEntry>& entries) {
    Aggregates agg;
    std::map<std::string, std::vector<std::pair<FactValue, std::size_t>>> hist;
    for (const auto& e : entries) {
        std::string model = e.facts.metadata.title.empty() ? e.record.title : e.facts.metadata.title;
        for (const auto& h : e.facts.hyperparams) {
            if (h.name.kind == HyperparamKind::architecture) {
                model = format_value(h.value);
                break;
            }
        }
        for (const auto& r : e.facts.results)
            agg.results.push_back({e.record.canonical_id, model, r.dataset.value_or(""), r.metric.str(), r.value, r.split});

        // Each paper counts once per distinct value of a name.
        std::map<std::string, std::vector<FactValue>> seen;
        for (const auto& h : e.facts.hyperparams) {
            auto& vals = seen[h.name.str()];
            const FactValue key = histogram_key(h.value);
            if (std::find(vals.begin(), vals.end(), key) == vals.end()) vals.push_back(key);
        }
        for (const auto& [name, vals] : seen) {
            auto& bins = hist[name];
            for (const auto& v : vals) {
                auto it = std::find_if(bins.begin(), bins.end(), [&](const auto& p) { return p.first == v; });
                if (it == bins.end()) bins.emplace_back(v, 1);
                else ++it->second;
            }
        }
    }
    for (auto& [name, bins] : hist)
        std::sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) { return value_less(a.first, b.first); });
    agg.histograms = std::move(hist);
    std::sort(agg.results.begin(), agg.results.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.metric, a.dataset, a.value, a.paper_id, a.model) <
               std::tie(b.metric, b.dataset, b.value, b.paper_id, b.model);
    });
    return agg;
}

const Aggregates& KnowledgeBase::aggregate() const {
    std::lock_guard lock(mutex_);
    if (!aggregates_) {
        std::vector<KbEntry> all;
        for (const auto& [id, e] : entries_) all.push_back(e);
        aggregates_ = build_aggregates(all);
    }
    return *aggregates_;
}

std::vector<nlohmann::json> KnowledgeBase::query(const Query& q) const {
    std::vector<nlohmann::json> rows;
    switch (q.kind) {
        case QueryKind::facts_by_name: {
            for (const auto& e : entries())
                for (const auto& h : e.facts.hyperparams)
                    if (h.name.str() == q.name) {
                        nlohmann::json row = {{"paper_id", e.record.canonical_id},
                                              {"name", h.name.str()},
                                              {"value", value_json(h.value)},
                                              {"surface", h.surface}};
                        if (h.unit) row["unit"] = *h.unit;
                        rows.push_back(std::move(row));
                    }
            break;
        }
        case QueryKind::papers_by_metric_threshold: {
            if (!std::isfinite(q.threshold)) throw std::invalid_argument("threshold must be finite");
            for (const auto& r : aggregate().results) {
                if (r.metric != q.name || !compare(r.value, q.comparator, q.threshold)) continue;
                if (q.dataset && to_lower(r.dataset) != to_lower(*q.dataset)) continue;
                nlohmann::json row = {{"paper_id", r.paper_id}, {"model", r.model}, {"metric", r.metric},
                                      {"dataset", r.dataset},   {"value", r.value}};
                if (r.split) row["split"] = to_string(*r.split);
                rows.push_back(std::move(row));
            }
            break;
        }
        case QueryKind::value_histogram: {
            const auto& h = aggregate().histograms;
            auto it = h.find(q.name);
            if (it == h.end()) break;
            auto bins = it->second;
            // Most common first, so the first row is the mode.
            std::stable_sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
            for (const auto& [v, n] : bins) rows.push_back({{"value", value_json(v)}, {"count", n}});
            break;
        }
        case QueryKind::free_lookup: {
            const std::string needle = to_lower(q.name);
            for (const auto& e : entries()) {
                const auto hit = [&](std::string_view field, std::string_view text) {
                    if (!needle.empty() && to_lower(text).find(needle) != std::string::npos) {
                        rows.push_back({{"paper_id", e.record.canonical_id}, {"field", field}, {"text", text}});
                        return true;
                    }
                    return false;
                };
                if (hit("title", e.facts.metadata.title.empty() ? e.record.title : e.facts.metadata.title)) continue;
                if (e.facts.metadata.abstract && hit("abstract", *e.facts.metadata.abstract)) continue;
                for (const auto& h : e.facts.hyperparams)
                    if (hit(h.name.str(), h.surface)) break;
            }
            break;
        }
    }
    return rows;
}

std::string KnowledgeBase::serialize() const {
    std::string out = nlohmann::json{{"format", kFormat}, {"version", kVersion}}.dump() + "\n";
    for (const auto& e : entries()) out += nlohmann::json{{"record", e.record}, {"facts", e.facts}}.dump() + "\n";
    return out;
}

void KnowledgeBase::persist(const std::filesystem::path& path) const { write_file_atomic(path, serialize()); }

KnowledgeBase KnowledgeBase::parse(std::string_view contents) {
    KnowledgeBase kb;
    std::istringstream in{std::string(contents)};
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw KbFormatError(lineno, std::string("malformed JSON: ") + e.what());
        }
        if (!header_seen && j.is_object() && j.contains("format")) {
            if (j["format"] != kFormat) throw KbFormatError(lineno, "not a knowledge base file");
            if (j.value("version", 0) != kVersion)
                throw KbFormatError(lineno, "unsupported version " + j["version"].dump());
            header_seen = true;
            continue;
        }
        header_seen = true;
        try {
            auto record = j.at("record").get<PaperRecord>();
            auto facts = j.at("facts").get<FactBundle>();
            kb.append(std::move(record), std::move(facts));
        } catch (const KbConflict& e) {
            throw KbFormatError(lineno, e.what());
        } catch (const std::exception& e) {
            throw KbFormatError(lineno, std::string("bad entry: ") + e.what());
        }
    }
    return kb;
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
    try {
        return parse(read_file(path));
    } catch (const KbFormatError& e) {
        throw KbFormatError(e.line(), e.detail(), path.string());
    }
}

}  // namespace litsynth
