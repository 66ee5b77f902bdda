#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "litsynth/facts.hpp"

namespace litsynth {

struct SlotSpec {
    std::string name;  // hyperparameter name the slot binds to
    bool list = false;  // written "name[]": binds every value of the first list
    friend bool operator==(const SlotSpec&, const SlotSpec&) = default;
};

/// Template files (data/templates/*.tmpl) are a header of "key: value" lines,
/// a line "---", then the script body. Header keys:
///   id           template id
///   description  free text
///   match        regex tested against architecture facts, title and abstract
///   priority     higher is tried first
///   slots        comma separated slot names, "name[]" for list slots
///   defaults     comma separated name=value pairs (seed, patience, lr_divisor)
/// The body refers to slots and defaults as {{name}}; {{paper_id}} and
/// {{template_id}} are always available.
struct ScriptTemplate {
    std::string id;
    std::string description;
    std::string match;
    int priority = 0;
    std::vector<SlotSpec> slots;
    std::map<std::string, std::string> defaults;
    std::string body;
};

class TemplateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ScriptTemplate parse_template(std::string_view text, const std::string& origin = "template");
/// Every *.tmpl file in `dir`, sorted by descending priority, then id.
std::vector<ScriptTemplate> load_templates(const std::filesystem::path& dir);

/// Highest-priority template whose pattern matches; nullptr when none does.
const ScriptTemplate* select_template(const FactBundle& facts, const std::vector<ScriptTemplate>& templates);

struct Binding {
    std::vector<FactValue> values;  // exactly one for scalar slots
    bool list = false;
    friend bool operator==(const Binding&, const Binding&) = default;
};

struct ReproductionPlan {
    std::string paper_id;
    std::string template_id;
    std::map<std::string, Binding> bindings;
    std::vector<std::string> unresolved;  // in template slot order
    std::vector<std::string> notes;
    friend bool operator==(const ReproductionPlan&, const ReproductionPlan&) = default;
};

/// Binds each slot to facts of the same name. A scalar slot with several
/// candidate values takes the earliest fact in the experimental-setup part of
/// `text` (or the earliest overall) and records the conflict in `notes`.
ReproductionPlan plan_reproduction(const std::string& paper_id, const FactBundle& facts, const ScriptTemplate& tmpl,
                                   std::string_view text = {});

/// Throws TemplateError when the plan's template is not in `registry`.
std::string render_script(const ReproductionPlan& plan, const std::vector<ScriptTemplate>& registry);

/// Python literal for a bound value: numbers via format_number, strings quoted.
std::string render_value(const FactValue& v);

std::string slot_guidance(const std::string& slot);

struct ScriptArtifact {
    std::string paper_id;
    std::string template_id;
    std::filesystem::path path;
    std::vector<std::string> unresolved;
};

/// Writes <dir>/<paper id stem>/<template id>.py for each plan and a
/// manifest.jsonl listing every plan and its unresolved slots.
std::vector<ScriptArtifact> write_artifacts(const std::vector<ReproductionPlan>& plans,
                                            const std::vector<ScriptTemplate>& registry,
                                            const std::filesystem::path& dir);

}  // namespace litsynth
