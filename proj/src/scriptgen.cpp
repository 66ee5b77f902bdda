#include "litsynth/scriptgen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <boost/regex.hpp>
#include <nlohmann/json.hpp>

#include "litsynth/extract.hpp"
#include "litsynth/record.hpp"
#include "litsynth/text.hpp"

namespace litsynth {

namespace {

const boost::regex& placeholder_re() {
    static const boost::regex re(R"(\{\{\s*([A-Za-z_][A-Za-z0-9_]*)\s*\}\})");
    return re;
}

std::size_t setup_region_start(std::string_view text) {
    static const boost::regex heading(
        R"(^[ \t]*(?:\d+(?:\.\d+)*\.?[ \t]+)?(?:experimental setup|experimental details|experiments?|training details|implementation details|training setup|setup|hyperparameters)[ \t]*$)",
        boost::regex::perl | boost::regex::icase);
    const std::string s(text);
    boost::smatch m;
    if (boost::regex_search(s, m, heading)) return static_cast<std::size_t>(m.position());
    return std::string_view::npos;
}

std::vector<std::string> header_list(const std::string& v) {
    std::vector<std::string> out;
    for (const auto& part : split(v, ',')) {
        const std::string t = trim(part);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

std::string slot_guidance(const std::string& slot) {
    static const std::map<std::string, std::string, std::less<>> specific = {
        {"learning_rate", "look for the optimiser paragraph or the released training config"},
        {"num_layers", "check the model description or the architecture table"},
        {"hidden_size", "check the model description; per-layer sizes may differ"},
        {"epochs", "check the training schedule; some papers report steps instead"},
        {"steps", "check the training schedule; some papers report epochs instead"},
        {"grad_clip", "papers often state clipping next to the optimiser settings"},
        {"dropout", "dropout is often listed per component; pick the one this slot feeds"},
    };
    const std::string base = "value not found in the paper; ";
    auto it = specific.find(slot);
    return base + (it != specific.end() ? it->second : "consult the paper's setup section or appendix") +
           ", then record where the value came from";
}

std::string render_value(const FactValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
    std::string out = "\"";
    for (char c : std::get<std::string>(v)) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

ScriptTemplate parse_template(std::string_view text, const std::string& origin) {
    ScriptTemplate t;
    const auto sep = text.find("\n---\n");
    if (sep == std::string_view::npos) throw TemplateError(origin + ": missing '---' line between header and body");
    std::istringstream header{std::string(text.substr(0, sep))};
    t.body = std::string(text.substr(sep + 5));
    std::string line;
    while (std::getline(header, line)) {
        const std::string l = trim(line);
        if (l.empty() || l[0] == '#') continue;
        const auto colon = l.find(':');
        if (colon == std::string::npos) throw TemplateError(origin + ": header line without ':': " + l);
        const std::string key = trim(l.substr(0, colon)), value = trim(l.substr(colon + 1));
        if (key == "id") t.id = value;
        else if (key == "description") t.description = value;
        else if (key == "match") t.match = value;
        else if (key == "priority") t.priority = std::stoi(value);
        else if (key == "slots") {
            for (auto s : header_list(value)) {
                const bool list = s.size() > 2 && s.compare(s.size() - 2, 2, "[]") == 0;
                if (list) s.resize(s.size() - 2);
                t.slots.push_back({s, list});
            }
        } else if (key == "defaults") {
            for (const auto& kv : header_list(value)) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw TemplateError(origin + ": default without '=': " + kv);
                t.defaults[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
            }
        } else {
            throw TemplateError(origin + ": unknown header key '" + key + "'");
        }
    }
    if (t.id.empty()) throw TemplateError(origin + ": missing id");

    std::set<std::string> known = {"paper_id", "template_id"};
    for (const auto& s : t.slots) known.insert(s.name);
    for (const auto& [k, v] : t.defaults) known.insert(k);
    for (boost::sregex_iterator it(t.body.begin(), t.body.end(), placeholder_re()), end; it != end; ++it)
        if (!known.count(it->str(1)))
            throw TemplateError(origin + ": placeholder {{" + it->str(1) + "}} is neither a slot nor a default");
    return t;
}

std::vector<ScriptTemplate> load_templates(const std::filesystem::path& dir) {
    std::vector<ScriptTemplate> out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".tmpl") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(parse_template(read_file(f), f.string()));
    std::stable_sort(out.begin(), out.end(), [](const ScriptTemplate& a, const ScriptTemplate& b) {
        if (a.priority != b.priority) return a.priority > b.priority;
        return a.id < b.id;
    });
    return out;
}

const ScriptTemplate* select_template(const FactBundle& facts, const std::vector<ScriptTemplate>& templates) {
    std::string hay = facts.metadata.title + "\n" + facts.metadata.abstract.value_or("");
    for (const auto& h : facts.hyperparams)
        if (h.name.kind == HyperparamKind::architecture) hay += "\n" + format_value(h.value);
    for (const auto& t : templates) {
        if (t.match.empty()) continue;
        if (boost::regex_search(hay, boost::regex(t.match, boost::regex::perl | boost::regex::icase))) return &t;
    }
    return nullptr;
}

ReproductionPlan plan_reproduction(const std::string& paper_id, const FactBundle& facts, const ScriptTemplate& tmpl,
                                   std::string_view text) {
    ReproductionPlan plan;
    plan.paper_id = paper_id;
    plan.template_id = tmpl.id;
    const std::size_t setup = text.empty() ? std::string_view::npos : setup_region_start(text);

    for (const auto& slot : tmpl.slots) {
        std::vector<const HyperparamFact*> candidates;
        for (const auto& f : facts.hyperparams)
            if (f.name.str() == slot.name) candidates.push_back(&f);
        if (candidates.empty()) {
            plan.unresolved.push_back(slot.name);
            continue;
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const auto* a, const auto* b) { return a->span < b->span; });
        const HyperparamFact* first = candidates.front();
        if (setup != std::string_view::npos) {
            for (const auto* c : candidates)
                if (c->span.begin >= setup) {
                    first = c;
                    break;
                }
        }

        Binding b;
        b.list = slot.list;
        b.values.push_back(first->value);
        if (slot.list) {
            // Following values of the same written list ("1150, 1150, and 400").
            Span prev = first->span;
            for (const auto* c : candidates) {
                if (c->span.begin < prev.end) continue;
                if (c->span.begin - prev.end > 12) break;
                b.values.push_back(c->value);
                prev = c->span;
            }
        } else {
            std::vector<std::string> distinct;
            for (const auto* c : candidates) {
                const std::string v = format_value(c->value);
                if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
            }
            if (distinct.size() > 1)
                plan.notes.push_back("conflict for " + slot.name + ": values " + join(distinct, ", ") + "; using " +
                                     format_value(first->value) +
                                     (setup != std::string_view::npos ? " (earliest in the setup section)" : " (earliest)"));
        }
        plan.bindings.emplace(slot.name, std::move(b));
    }
    plan.notes.push_back("fix the random seed and keep it with the results");
    plan.notes.push_back("use the dataset version and split named in the paper");
    plan.notes.push_back("compare against the paper's reported numbers on the same split before changing settings");
    return plan;
}

std::string render_script(const ReproductionPlan& plan, const std::vector<ScriptTemplate>& registry) {
    const auto it = std::find_if(registry.begin(), registry.end(),
                                 [&](const ScriptTemplate& t) { return t.id == plan.template_id; });
    if (it == registry.end()) throw TemplateError("template '" + plan.template_id + "' is not registered");
    const ScriptTemplate& tmpl = *it;

    if (!tmpl.slots.empty() && plan.bindings.empty()) {
        std::string out = "# Reproduction script for " + plan.paper_id + " (template " + tmpl.id + ")\n";
        out += "# No hyperparameters were extracted, so no script body was generated.\n";
        for (const auto& s : plan.unresolved) out += "# TODO " + s + ": " + slot_guidance(s) + "\n";
        for (const auto& n : plan.notes) out += "# note: " + n + "\n";
        return out;
    }

    std::istringstream body(tmpl.body);
    std::string out, line;
    while (std::getline(body, line)) {
        std::string rendered;
        std::vector<std::string> todo;
        auto last = line.cbegin();
        for (boost::sregex_iterator m(line.begin(), line.end(), placeholder_re()), end; m != end; ++m) {
            rendered.append(last, (*m)[0].first);
            last = (*m)[0].second;
            const std::string name = m->str(1);
            if (name == "paper_id") rendered += plan.paper_id;
            else if (name == "template_id") rendered += tmpl.id;
            else if (auto b = plan.bindings.find(name); b != plan.bindings.end()) {
                if (b->second.list) {
                    std::vector<std::string> items;
                    for (const auto& v : b->second.values) items.push_back(render_value(v));
                    rendered += "[" + join(items, ", ") + "]";
                } else {
                    rendered += render_value(b->second.values.front());
                }
            } else if (auto d = tmpl.defaults.find(name); d != tmpl.defaults.end()) {
                rendered += d->second;
            } else {
                rendered += "None";
                todo.push_back(name);
            }
        }
        rendered.append(last, line.cend());
        for (const auto& t : todo) rendered += "  # TODO " + t + ": " + slot_guidance(t);
        out += rendered + "\n";
    }
    if (!plan.notes.empty()) {
        out += "\n# Reproduction notes\n";
        for (const auto& n : plan.notes) out += "# - " + n + "\n";
    }
    return out;
}

std::vector<ScriptArtifact> write_artifacts(const std::vector<ReproductionPlan>& plans,
                                            const std::vector<ScriptTemplate>& registry,
                                            const std::filesystem::path& dir) {
    std::vector<ScriptArtifact> out;
    std::string manifest;
    for (const auto& plan : plans) {
        const auto path = dir / cache_file_stem(plan.paper_id) / (plan.template_id + ".py");
        write_file_atomic(path, render_script(plan, registry));
        out.push_back({plan.paper_id, plan.template_id, path, plan.unresolved});
        manifest += nlohmann::json{{"paper_id", plan.paper_id},
                                   {"template_id", plan.template_id},
                                   {"path", std::filesystem::relative(path, dir).generic_string()},
                                   {"unresolved", plan.unresolved},
                                   {"needs_review", !plan.unresolved.empty()}}
                        .dump() +
                    "\n";
    }
    write_file_atomic(dir / "manifest.jsonl", manifest);
    return out;
}

}  // namespace litsynth
