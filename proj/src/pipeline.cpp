#include "litsynth/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "litsynth/data_dir.hpp"
#include "litsynth/extract.hpp"
#include "litsynth/ingestion.hpp"
#include "litsynth/kb.hpp"
#include "litsynth/parse.hpp"
#include "litsynth/relevance.hpp"
#include "litsynth/scriptgen.hpp"
#include "litsynth/text.hpp"
#include "litsynth/topics.hpp"
#include "litsynth/worker_pool.hpp"

namespace fs = std::filesystem;

namespace litsynth {

bool RunConfig::enabled(const std::string& stage) const {
    const auto it = stage_toggles.find(stage);
    return it == stage_toggles.end() || it->second;
}

void RunConfig::validate() const {
    if (year_min > year_max)
        throw ConfigError("year range " + std::to_string(year_min) + ":" + std::to_string(year_max) + " is reversed");
    if (worker_count < 1) throw ConfigError("worker_count must be >= 1");
    std::set<std::string> known(std::begin(kStageNames), std::end(kStageNames));
    for (const auto& [name, on] : stage_toggles)
        if (!known.count(name)) throw ConfigError("unknown stage toggle '" + name + "'");
    if (stage_toggles.size() != known.size()) throw ConfigError("stage_toggles must name every stage");
}

RunConfig parse_cli_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"litsynth run"};
    app.set_help_flag();
    std::string years;
    std::vector<std::string> disabled;
    std::vector<std::string> sources;
    std::string kb, report, cache, artifacts, data_dir, keywords, local_dir, endpoint;
    app.add_option("--topic", cfg.topic_query)->required();
    app.add_option("--years", years);
    app.add_option("--workers", cfg.worker_count);
    app.add_option("--seed", cfg.random_seed);
    app.add_option("--disable", disabled);
    app.add_option("--kb", kb);
    app.add_option("--report", report);
    app.add_option("--corpus-cache", cache);
    app.add_option("--artifacts", artifacts);
    app.add_option("--summariser-endpoint", endpoint);
    app.add_option("--data-dir", data_dir);
    app.add_option("--keywords", keywords);
    app.add_option("--sources", sources)->delimiter(',');
    app.add_option("--local-dir", local_dir);
    app.add_flag("--overwrite", cfg.overwrite);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (!years.empty()) {
        const auto colon = years.find(':');
        if (colon == std::string::npos) throw UsageError("--years expects MIN:MAX, got '" + years + "'");
        try {
            std::size_t used = 0;
            const std::string lo = years.substr(0, colon), hi = years.substr(colon + 1);
            cfg.year_min = std::stoi(lo, &used);
            if (used != lo.size()) throw std::invalid_argument(lo);
            cfg.year_max = std::stoi(hi, &used);
            if (used != hi.size()) throw std::invalid_argument(hi);
        } catch (const std::logic_error&) {
            throw UsageError("--years expects MIN:MAX, got '" + years + "'");
        }
        if (cfg.year_min > cfg.year_max) throw UsageError("--years " + years + ": MIN is after MAX");
    }
    if (cfg.worker_count < 1) throw UsageError("--workers must be >= 1");
    for (const auto& d : disabled) {
        if (!cfg.stage_toggles.count(d)) throw UsageError("--disable: unknown stage '" + d + "'");
        cfg.stage_toggles[d] = false;
    }
    if (!sources.empty()) {
        cfg.sources.clear();
        for (const auto& s : sources) {
            try {
                cfg.sources.push_back(source_from_string(s));
            } catch (const std::exception&) {
                throw UsageError("--sources: unknown source '" + s + "'");
            }
        }
    }
    if (!kb.empty()) cfg.kb_path = kb;
    if (!report.empty()) cfg.report_path = report;
    if (!cache.empty()) cfg.corpus_cache = cache;
    if (!artifacts.empty()) cfg.artifacts_dir = artifacts;
    if (!endpoint.empty()) cfg.summariser_endpoint = endpoint;
    if (!data_dir.empty()) cfg.data_dir = data_dir;
    if (!keywords.empty()) cfg.keywords = fs::path(keywords);
    if (!local_dir.empty()) cfg.local_dir = local_dir;
    return cfg;
}

namespace {

using Clock = std::chrono::steady_clock;

void require_writable_dir(const fs::path& dir, const std::string& what) {
    std::error_code ec;
    const fs::path d = dir.empty() ? fs::path(".") : dir;
    fs::create_directories(d, ec);
    if (ec || !fs::is_directory(d)) throw ConfigError(what + ": cannot create directory " + d.string());
    const fs::path probe = d / ".litsynth-write-probe";
    {
        std::ofstream out(probe);
        if (!out) throw ConfigError(what + ": directory " + d.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

void require_writable_file(const fs::path& file, const std::string& what) {
    if (file.empty()) throw ConfigError(what + ": empty path");
    if (fs::is_directory(file)) throw ConfigError(what + ": " + file.string() + " is a directory");
    require_writable_dir(file.parent_path(), what);
    if (fs::exists(file)) {
        std::ofstream out(file, std::ios::app);
        if (!out) throw ConfigError(what + ": " + file.string() + " is not writable");
    }
}

std::vector<std::pair<std::string, bool>> load_training_set(const fs::path& path) {
    std::vector<std::pair<std::string, bool>> out;
    std::size_t lineno = 0;
    for (const auto& line : split(read_file(path), '\n')) {
        ++lineno;
        if (trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            out.emplace_back(j.at("text").get<std::string>(), j.at("relevant").get<bool>());
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path.string() + ": line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::string leading_words(std::string_view text, std::size_t n) {
    std::string out;
    std::size_t count = 0;
    for (const auto& w : split(std::string(text), ' ')) {
        if (trim(w).empty()) continue;
        if (count++ == n) break;
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

struct Processed {
    PaperRecord record;
    FactBundle facts;
    std::string text;  // only kept for extracted papers
};

class StageTimer {
public:
    StageTimer(RunOutput& out, std::string name) : out_(out), name_(std::move(name)), start_(Clock::now()) {
        spdlog::info("stage {}: start", name_);
    }
    void done() {
        const double s = std::chrono::duration<double>(Clock::now() - start_).count();
        out_.stage_seconds[name_] = s;
        out_.completed_stages.push_back(name_);
        spdlog::info("stage {}: done in {:.3f}s", name_, s);
    }

private:
    RunOutput& out_;
    std::string name_;
    Clock::time_point start_;
};

std::vector<PaperRecord> ingest(const RunConfig& cfg, HttpClient& http, RunOutput& out) {
    const YearRange years{cfg.year_min, cfg.year_max};
    if (fs::exists(cfg.corpus_cache / kManifestName)) {
        spdlog::info("using cached corpus {}", cfg.corpus_cache.string());
        auto cached = read_manifest(cfg.corpus_cache);
        std::erase_if(cached, [&](const PaperRecord& r) { return r.year != 0 && !years.contains(r.year); });
        return cached;
    }
    std::vector<PaperRecord> all;
    std::vector<std::string> failed;
    for (Source s : cfg.sources) {
        try {
            if (s == Source::local_file) {
                auto local = scan_local_directory(cfg.local_dir);
                std::erase_if(local, [&](const PaperRecord& r) { return r.year != 0 && !years.contains(r.year); });
                all.insert(all.end(), local.begin(), local.end());
                continue;
            }
            SearchLog log;
            auto found = search_api(http, cfg.topic_query, years, s, default_source_config(s), &log);
            for (const auto& skip : log.skipped) out.warnings.push_back(std::string(to_string(s)) + ": skipped " + skip);
            all.insert(all.end(), found.begin(), found.end());
        } catch (const SourceError& e) {
            failed.push_back(std::string(to_string(s)) + ": " + e.what());
            all.insert(all.end(), e.partial().begin(), e.partial().end());
        } catch (const HttpError& e) {
            failed.push_back(std::string(to_string(s)) + ": " + e.what());
        }
    }
    for (const auto& f : failed) out.warnings.push_back("source failed: " + f);
    if (!failed.empty() && all.empty())
        throw PartialRunError("retrieval failed (" + join(failed, "; ") + ")", out.completed_stages);

    auto records = deduplicate(std::move(all));
    for (auto& r : records) r = fetch_document(std::move(r), cfg.corpus_cache, http);
    write_manifest(cfg.corpus_cache, records);
    return records;
}

}  // namespace

RunOutput run_pipeline(const RunConfig& config) {
    config.validate();
    const auto started = Clock::now();
    const fs::path data_dir = config.data_dir.empty() ? default_data_dir() : config.data_dir;

    // Configuration checks; nothing is read from the network before these pass.
    require_writable_file(config.kb_path, "knowledge base");
    require_writable_file(config.report_path, "report");
    require_writable_dir(config.artifacts_dir, "script artifacts");
    if (!fs::exists(config.corpus_cache / kManifestName)) require_writable_dir(config.corpus_cache, "corpus cache");

    Extractor extractor = [&] {
        try {
            return Extractor::load(data_dir);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("extraction rules: ") + e.what());
        }
    }();
    std::vector<ScriptTemplate> templates;
    try {
        templates = load_templates(data_dir / "templates");
    } catch (const std::exception& e) {
        throw ConfigError(std::string("script templates: ") + e.what());
    }
    std::vector<std::string> keywords{config.topic_query};
    if (config.keywords) {
        try {
            for (auto& k : load_keywords(*config.keywords)) keywords.push_back(std::move(k));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("keywords: ") + e.what());
        }
    }
    std::erase_if(keywords, [](const std::string& k) { return trim(k).empty(); });
    std::optional<RelevanceModel> model;
    if (config.enabled("relevance_classifier")) {
        const fs::path train = data_dir / "relevance" / "train.jsonl";
        if (!fs::exists(train)) throw ConfigError("relevance classifier enabled but " + train.string() + " is missing");
        try {
            model = train_classifier(load_training_set(train), config.random_seed);
        } catch (const TrainingError& e) {
            throw ConfigError(std::string("relevance classifier: ") + e.what());
        }
    }

    std::shared_ptr<HttpClient> http = config.http ? config.http : std::make_shared<NetworkHttpClient>();
    std::shared_ptr<SummaryBackend> backend;
    if (config.enabled("llm_summarisation")) {
        if (config.summary_backend) backend = config.summary_backend;
        else if (config.summariser_endpoint)
            backend = std::make_shared<HttpSummaryBackend>(http, *config.summariser_endpoint);
    }

    RunOutput out;
    out.kb_path = config.kb_path;

    StageTimer ingest_timer(out, "ingest");
    const std::vector<PaperRecord> records = ingest(config, *http, out);
    ingest_timer.done();
    spdlog::info("{} candidate papers", records.size());

    // Filtering needs the document text, so it runs inside the per-paper
    // task right after parsing.
    KnowledgeBase kb;
    if (fs::exists(config.kb_path)) kb = KnowledgeBase::load(config.kb_path);
    const ExtractOptions xopts{config.enabled("rule_patterns")};
    const BackendRegistry backends;
    const std::size_t workers = config.enabled("parallel_parsing") ? config.worker_count : 1;
    StageTimer parse_timer(out, "filter_parse_extract");
    auto mapped = parallel_map(records, workers, [&](const PaperRecord& in) {
        Processed p{in, {}, {}};
        PaperRecord& r = p.record;
        ParseResult parsed;
        if (r.pdf_path) parsed = pdf_to_text(*r.pdf_path, backends);
        else parsed.extraction_warnings.push_back(kUnparseable);
        for (const auto& w : parsed.extraction_warnings)
            if (std::find(r.review_flags.begin(), r.review_flags.end(), w) == r.review_flags.end())
                r.review_flags.push_back(w);
        if (!parsed.ok()) {
            r.advance(PaperStatus::parse_failed);
        } else {
            r.advance(PaperStatus::parsed);
            const auto decision = classify(model ? &*model : nullptr, parsed.text, keywords, r.canonical_id);
            if (!decision.relevant) {
                r.advance(PaperStatus::filtered_out);
            } else {
                p.facts = extractor.extract(parsed.text, &r, xopts);
                r.advance(PaperStatus::extracted);
                p.text = std::move(parsed.text);
            }
        }
        kb.append(r, p.facts, config.overwrite);
        return p;
    });
    for (const auto& f : mapped.failures) out.warnings.push_back("paper " + f.canonical_id + " failed: " + f.message);
    for (const auto& p : mapped.outputs) ++out.status_counts[std::string(to_string(p.record.status))];
    parse_timer.done();

    StageTimer agg_timer(out, "aggregate");
    kb.aggregate();
    kb.persist(config.kb_path);
    agg_timer.done();

    std::vector<const Processed*> kept;
    for (const auto& p : mapped.outputs)
        if (p.record.status == PaperStatus::extracted) kept.push_back(&p);

    StageTimer cluster_timer(out, "cluster");
    std::vector<std::pair<std::string, std::string>> embed_docs;
    for (const auto* p : kept) {
        const auto& abstract = p->facts.metadata.abstract;
        embed_docs.emplace_back(p->record.canonical_id,
                                abstract && !trim(*abstract).empty() ? *abstract : leading_words(p->text, 200));
    }
    TfidfIndex index;
    TopicModel topics;
    if (embed_docs.size() >= 2) {
        index = build_tfidf(embed_docs);
        for (const auto& w : index.warnings) out.warnings.push_back("clustering: " + w);
        topics = index.doc_vectors.size() >= 3
                     ? cluster_topics(index, 2, default_k_max(index.doc_vectors.size()), config.random_seed)
                     : single_topic(index);
    } else if (embed_docs.size() == 1) {
        topics.k = 1;
        topics.doc_ids = {embed_docs[0].first};
        topics.assignment[embed_docs[0].first] = 0;
        topics.centroids.emplace_back();
        topics.labels.emplace_back();
    }
    // Papers left out of the TF-IDF space (no informative terms) join the
    // first topic so that every kept paper is summarised somewhere.
    for (const auto* p : kept)
        if (!topics.assignment.count(p->record.canonical_id) && topics.k > 0)
            topics.assignment[p->record.canonical_id] = 0;
    cluster_timer.done();

    StageTimer summary_timer(out, "summarise");
    for (std::size_t c = 0; c < topics.k; ++c) {
        TopicSection section;
        section.cluster = c;
        section.labels = topics.labels.at(c);
        std::vector<ClusterDocument> docs;
        for (const auto* p : kept)
            if (topics.assignment.at(p->record.canonical_id) == c) {
                section.members.push_back(p->record.canonical_id);
                docs.push_back({p->record.canonical_id, p->text});
            }
        section.summary = summarise(docs, to_sparse(topics.centroids.at(c)), index, backend.get());
        out.report.push_back(std::move(section));
    }
    out.report_text = render_report(config.topic_query, out.report);
    write_file_atomic(config.report_path, out.report_text);
    summary_timer.done();

    StageTimer script_timer(out, "scripts");
    std::vector<ReproductionPlan> plans;
    for (const auto* p : kept)
        if (const auto* tmpl = select_template(p->facts, templates))
            plans.push_back(plan_reproduction(p->record.canonical_id, p->facts, *tmpl, p->text));
    if (!plans.empty())
        for (const auto& a : write_artifacts(plans, templates, config.artifacts_dir)) out.script_artifacts.push_back(a.path);
    script_timer.done();

    out.total_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    if (!mapped.failures.empty())
        throw PartialRunError(std::to_string(mapped.failures.size()) + " paper task(s) failed: " +
                                  join(out.warnings, "; "),
                              out.completed_stages);
    return out;
}

}  // namespace litsynth
