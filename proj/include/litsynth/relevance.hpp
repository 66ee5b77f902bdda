#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "litsynth/tfidf.hpp"

namespace litsynth {

enum class DecidingStage { keyword, classifier };
std::string_view to_string(DecidingStage s);

struct RelevanceDecision {
    std::string canonical_id;
    bool keyword_hit = false;
    std::optional<double> classifier_score;
    bool relevant = false;
    DecidingStage deciding_stage = DecidingStage::keyword;
};

/// Logistic model over TF-IDF features.
struct RelevanceModel {
    std::map<std::string, std::size_t, std::less<>> vocabulary;
    std::vector<double> idf;
    std::vector<double> weights;
    double bias = 0;
    double threshold = 0.5;
    std::uint64_t seed = 42;

    /// sigmoid(w . x + b) for the TF-IDF features of `text`.
    double score(std::string_view text) const;
    friend bool operator==(const RelevanceModel&, const RelevanceModel&) = default;
};

struct TrainingOptions {
    int epochs = 400;
    double learning_rate = 2.0;
    double l2 = 1e-4;
    double threshold = 0.5;
};

class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full-batch gradient descent with class-balanced loss. Weights start from
/// small values drawn from `seed`, so equal inputs give equal models.
/// Throws TrainingError unless both classes are present.
RelevanceModel train_classifier(const std::vector<std::pair<std::string, bool>>& labelled, std::uint64_t seed,
                                const TrainingOptions& opts = {});

void save_model(const RelevanceModel& model, const std::filesystem::path& path);
RelevanceModel load_model(const std::filesystem::path& path);

/// One phrase per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> load_keywords(const std::filesystem::path& path);

/// True when any phrase occurs case-insensitively on word boundaries. With
/// `fold_hyphens`, intra-word hyphens are ignored on both sides so
/// "Auto-Regressive" matches "autoregressive". A trailing plural "s" on the
/// text side is accepted.
bool keyword_filter(std::string_view text, const std::vector<std::string>& keywords, bool fold_hyphens = true);

/// Leading part of a document used for relevance decisions (title,
/// abstract, start of the introduction).
std::string_view relevance_view(std::string_view text, std::size_t max_words = 400);

/// Keyword stage first; a keyword miss is final. `model == nullptr` means the
/// classifier stage is disabled and the keyword result decides.
RelevanceDecision classify(const RelevanceModel* model, std::string_view text, const std::vector<std::string>& keywords,
                           std::string canonical_id = {});

}  // namespace litsynth
