#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "litsynth/kb.hpp"

namespace litsynth {

enum class Task { relevance, hyperparams, results, citations };
std::string_view to_string(Task t);
std::optional<Task> task_from_string(std::string_view s);
inline constexpr Task kAllTasks[] = {Task::relevance, Task::hyperparams, Task::results, Task::citations};

using ItemSet = std::set<std::string>;

struct Prf {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t tp = 0;
    std::size_t extracted = 0;
    std::size_t gold = 0;
    bool empty_extracted = false;  // P defined as 0
    bool empty_gold = false;       // R defined as 0
};

/// P = tp/|E|, R = tp/|G|, F1 = 2PR/(P+R); each is 0 when its denominator is.
Prf compute_prf(const ItemSet& extracted, const ItemSet& gold);
/// Same ratios from accumulated counts.
Prf prf_from_counts(std::size_t tp, std::size_t extracted, std::size_t gold);

struct GoldAnnotation {
    std::string canonical_id;
    Task task = Task::hyperparams;
    ItemSet items;
    friend bool operator==(const GoldAnnotation&, const GoldAnnotation&) = default;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One JSON object per line: {"canonical_id", "task", "items": [...]}.
/// Duplicate items or an unknown task are errors.
std::vector<GoldAnnotation> parse_gold(std::string_view contents);
std::vector<GoldAnnotation> load_gold(const std::filesystem::path& path);
void save_gold(const std::vector<GoldAnnotation>& gold, const std::filesystem::path& path);

/// Item keys shared by gold files and extraction output:
///   hyperparams  name=value          ("learning_rate=30", "optimizer=sgd")
///   results      metric|value|dataset ("perplexity|19.5|WikiText-103")
///   citations    resolved key         ("merity2017")
///   relevance    "relevant" for papers kept by the filter
std::string hyperparam_item(const HyperparamFact& f);
std::string result_item(const ResultFact& f);
ItemSet extracted_items(const KbEntry& entry, Task task);

/// micro: counts summed over papers before taking ratios.
/// macro: ratios per annotation, then averaged (tp/|E|/|G| stay summed).
enum class Averaging { micro, macro };

struct EvalReport {
    std::map<Task, Prf> tasks;  // averaged over annotated papers
    Prf pooled;                 // averaged over every task
    std::size_t papers = 0;
    Averaging averaging = Averaging::micro;
};

/// Throws EvalError naming every gold id missing from the KB.
EvalReport evaluate_corpus(const std::vector<GoldAnnotation>& gold, const KnowledgeBase& kb,
                           Averaging averaging = Averaging::micro);

std::string format_eval_report(const EvalReport& r);
nlohmann::json eval_report_json(const EvalReport& r);

}  // namespace litsynth
