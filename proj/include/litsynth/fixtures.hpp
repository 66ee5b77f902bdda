#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "litsynth/eval.hpp"
#include "litsynth/facts.hpp"
#include "litsynth/record.hpp"

namespace litsynth {

struct NoiseProfile {
    /// Sentences with numbers next to words no rule should pick up
    /// ("4 GPUs", "12 hours").
    std::size_t distractors = 0;
};

/// One synthetic paper. Hyperparameters and results are written as prose
/// the shipped rule file recognises; citations are taken from the
/// resolved keys ("surname" + year) of `planted.citations`.
struct SyntheticPaperSpec {
    std::string canonical_id;  // "local:" is prepended when missing
    FactBundle planted;
    std::size_t length_words = 600;
    NoiseProfile noise;
    bool relevant = true;  // false writes an off-topic paper with no planted facts
};

enum class CorpusFormat { text, pdf };

struct GeneratedCorpus {
    std::filesystem::path dir;
    std::vector<PaperRecord> records;
    std::vector<GoldAnnotation> gold;
};

class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes one document per spec, manifest.jsonl (the ingestion cache layout)
/// and gold.jsonl. Output bytes depend only on `specs` and `seed`. Throws
/// FixtureError on an empty spec list or duplicate ids.
GeneratedCorpus generate_corpus(const std::vector<SyntheticPaperSpec>& specs, std::uint64_t seed,
                                const std::filesystem::path& dir, CorpusFormat format = CorpusFormat::text);

/// `n` relevant specs with facts drawn from fixed pools; ids synth-0001...
std::vector<SyntheticPaperSpec> random_specs(std::size_t n, std::uint64_t seed, std::size_t length_words = 600,
                                             NoiseProfile noise = {});

/// Paper text for one spec, as generate_corpus writes it.
std::string render_paper(const SyntheticPaperSpec& spec, std::uint64_t seed);

/// Gold annotations implied by a spec's planted facts.
std::vector<GoldAnnotation> planted_gold(const SyntheticPaperSpec& spec);

/// Labelled snippets for training the relevance classifier: sequence
/// modelling papers versus off-topic ones, some of which still use the word
/// "autoregressive" (econometrics, signal processing).
std::vector<std::pair<std::string, bool>> relevance_training_set(std::size_t per_class, std::uint64_t seed);

}  // namespace litsynth
