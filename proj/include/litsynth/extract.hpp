#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "litsynth/facts.hpp"
#include "litsynth/record.hpp"
#include "litsynth/rules.hpp"

namespace litsynth {

struct ExtractOptions {
    /// When false the rule file is ignored and a small built-in
    /// "name (=|:|of|is) number" matcher is used instead.
    bool rule_patterns = true;
};

/// Offset of the references heading line, or npos when there is none.
std::size_t find_reference_section(std::string_view text);

/// Collapses facts with equal name and value whose spans overlap; keeps the
/// first in document order. Output is sorted by span, then name.
std::vector<HyperparamFact> dedup_hyperparams(std::vector<HyperparamFact> facts);

class Extractor {
public:
    Extractor(std::vector<Rule> rules, std::vector<GazetteerEntry> gazetteer);

    /// Reads rules/extraction.rules and gazetteer/datasets.txt under `data_dir`.
    static Extractor load(const std::filesystem::path& data_dir);

    /// Header heuristics; non-empty fields of `record` take precedence.
    Metadata extract_metadata(std::string_view text, const PaperRecord* record = nullptr) const;
    std::vector<HyperparamFact> extract_hyperparams(std::string_view text, const ExtractOptions& opts = {}) const;
    std::vector<ResultFact> extract_results(std::string_view text, const ExtractOptions& opts = {}) const;
    std::vector<CitationLink> extract_citations(std::string_view text) const;

    FactBundle extract(std::string_view text, const PaperRecord* record = nullptr, const ExtractOptions& opts = {}) const;

    const std::vector<GazetteerEntry>& gazetteer() const { return gazetteer_; }
    const std::vector<Rule>& rules() const { return rules_; }

private:
    std::string mask(std::string_view sentence) const;

    std::vector<Rule> rules_;
    std::vector<GazetteerEntry> gazetteer_;
};

}  // namespace litsynth
