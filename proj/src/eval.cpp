#include "litsynth/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "litsynth/text.hpp"

namespace litsynth {

std::string_view to_string(Task t) {
    switch (t) {
        case Task::relevance: return "relevance";
        case Task::hyperparams: return "hyperparams";
        case Task::results: return "results";
        case Task::citations: return "citations";
    }
    return "relevance";
}

std::optional<Task> task_from_string(std::string_view s) {
    for (Task t : kAllTasks)
        if (to_string(t) == s) return t;
    return std::nullopt;
}

Prf prf_from_counts(std::size_t tp, std::size_t extracted, std::size_t gold) {
    Prf r;
    r.tp = tp;
    r.extracted = extracted;
    r.gold = gold;
    r.empty_extracted = extracted == 0;
    r.empty_gold = gold == 0;
    r.precision = extracted ? static_cast<double>(tp) / static_cast<double>(extracted) : 0.0;
    r.recall = gold ? static_cast<double>(tp) / static_cast<double>(gold) : 0.0;
    const double s = r.precision + r.recall;
    r.f1 = s > 0 ? 2.0 * r.precision * r.recall / s : 0.0;
    return r;
}

Prf compute_prf(const ItemSet& extracted, const ItemSet& gold) {
    std::size_t tp = 0;
    for (const auto& item : extracted) tp += gold.count(item);
    return prf_from_counts(tp, extracted.size(), gold.size());
}

std::vector<GoldAnnotation> parse_gold(std::string_view contents) {
    std::vector<GoldAnnotation> out;
    std::istringstream in{std::string(contents)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fail = [&](const std::string& why) { return EvalError("gold line " + std::to_string(lineno) + ": " + why); };
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw fail(e.what());
        }
        GoldAnnotation g;
        g.canonical_id = j.value("canonical_id", "");
        if (g.canonical_id.empty()) throw fail("missing canonical_id");
        const auto task = task_from_string(j.value("task", ""));
        if (!task) throw fail("unknown task " + j.value("task", std::string("\"\"")));
        g.task = *task;
        for (const auto& item : j.value("items", nlohmann::json::array())) {
            if (!item.is_string()) throw fail("items must be strings");
            if (g.task == Task::relevance && item != "relevant") throw fail("relevance items must be \"relevant\"");
            if (!g.items.insert(item.get<std::string>()).second) throw fail("duplicate item " + item.dump());
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<GoldAnnotation> load_gold(const std::filesystem::path& path) { return parse_gold(read_file(path)); }

void save_gold(const std::vector<GoldAnnotation>& gold, const std::filesystem::path& path) {
    std::string out;
    for (const auto& g : gold)
        out += nlohmann::json{{"canonical_id", g.canonical_id}, {"task", to_string(g.task)}, {"items", g.items}}.dump() +
               "\n";
    write_file_atomic(path, out);
}

std::string hyperparam_item(const HyperparamFact& f) {
    const std::string v = format_value(f.value);
    return f.name.str() + "=" + (std::holds_alternative<std::string>(f.value) ? to_lower(v) : v);
}

std::string result_item(const ResultFact& f) {
    return f.metric.str() + "|" + format_number(f.value) + "|" + f.dataset.value_or("");
}

ItemSet extracted_items(const KbEntry& entry, Task task) {
    ItemSet items;
    switch (task) {
        case Task::relevance:
            if (entry.record.status == PaperStatus::extracted) items.insert("relevant");
            break;
        case Task::hyperparams:
            for (const auto& h : entry.facts.hyperparams) items.insert(hyperparam_item(h));
            break;
        case Task::results:
            for (const auto& r : entry.facts.results) items.insert(result_item(r));
            break;
        case Task::citations:
            for (const auto& c : entry.facts.citations)
                if (c.resolved_key) items.insert(*c.resolved_key);
            break;
    }
    return items;
}

EvalReport evaluate_corpus(const std::vector<GoldAnnotation>& gold, const KnowledgeBase& kb, Averaging averaging) {
    std::vector<std::string> missing;
    for (const auto& g : gold)
        if (!kb.lookup(g.canonical_id) && std::find(missing.begin(), missing.end(), g.canonical_id) == missing.end())
            missing.push_back(g.canonical_id);
    if (!missing.empty()) throw EvalError("gold ids missing from the knowledge base: " + join(missing, ", "));

    struct Acc {
        std::size_t tp = 0, e = 0, g = 0, n = 0;
        double p = 0, r = 0, f = 0;
        void add(const Prf& x) {
            tp += x.tp;
            e += x.extracted;
            g += x.gold;
            ++n;
            p += x.precision;
            r += x.recall;
            f += x.f1;
        }
        Prf finish(Averaging a) const {
            Prf out = prf_from_counts(tp, e, g);
            if (a == Averaging::macro && n > 0) {
                out.precision = p / static_cast<double>(n);
                out.recall = r / static_cast<double>(n);
                out.f1 = f / static_cast<double>(n);
            }
            return out;
        }
    };
    std::map<Task, Acc> acc;
    Acc all;
    std::set<std::string> papers;
    for (const auto& g : gold) {
        const auto entry = kb.lookup(g.canonical_id);
        const Prf p = compute_prf(extracted_items(*entry, g.task), g.items);
        acc[g.task].add(p);
        all.add(p);
        papers.insert(g.canonical_id);
    }
    EvalReport r;
    r.averaging = averaging;
    r.papers = papers.size();
    for (const auto& [task, a] : acc) r.tasks[task] = a.finish(averaging);
    r.pooled = all.finish(averaging);
    return r;
}

std::string format_eval_report(const EvalReport& r) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s %9s %9s %9s %6s %6s %6s\n", "task", "precision", "recall", "f1", "tp", "|E|",
                  "|G|");
    out += buf;
    const auto row = [&](std::string_view name, const Prf& p) {
        std::snprintf(buf, sizeof buf, "%-12.*s %9.4f %9.4f %9.4f %6zu %6zu %6zu\n", static_cast<int>(name.size()),
                      name.data(), p.precision, p.recall, p.f1, p.tp, p.extracted, p.gold);
        out += buf;
    };
    for (const auto& [task, p] : r.tasks) row(to_string(task), p);
    row("all", r.pooled);
    return out;
}

nlohmann::json eval_report_json(const EvalReport& r) {
    const auto prf = [](const Prf& p) {
        return nlohmann::json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1},
                              {"tp", p.tp},               {"extracted", p.extracted}, {"gold", p.gold}};
    };
    nlohmann::json j = {{"papers", r.papers},
                        {"averaging", r.averaging == Averaging::micro ? "micro" : "macro"},
                        {"all", prf(r.pooled)}};
    for (const auto& [task, p] : r.tasks) j["tasks"][std::string(to_string(task))] = prf(p);
    return j;
}

}  // namespace litsynth
