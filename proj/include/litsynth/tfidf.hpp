#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace litsynth {

/// Sparse vector as (index, weight) pairs sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, double>>;

double dot(const SparseVector& a, const SparseVector& b);
double norm(const SparseVector& v);
void normalize(SparseVector& v);

const std::set<std::string, std::less<>>& default_stop_words();

struct TokenizerOptions {
    /// nullptr disables stop-word removal.
    const std::set<std::string, std::less<>>* stop_words = &default_stop_words();
    std::size_t min_token_length = 1;
};

/// Lowercase alphanumeric tokens with stop words removed.
std::vector<std::string> content_tokens(std::string_view text, const TokenizerOptions& opts = {});

struct TfidfIndex {
    std::map<std::string, std::size_t, std::less<>> vocabulary;  // dense indices in token order
    std::vector<double> idf;                                      // ln(D / df)
    std::map<std::string, SparseVector> doc_vectors;              // unit L2 norm
    std::vector<std::string> warnings;
    TokenizerOptions tokenizer;

    std::size_t dimension() const { return idf.size(); }
    /// Projects unseen text into this space (unknown tokens ignored), L2
    /// normalized. May return an empty vector.
    SparseVector transform(std::string_view text) const;
    /// Vocabulary token at dense index `i`.
    const std::string& token(std::size_t i) const { return terms.at(i); }

    std::vector<std::string> terms;  // inverse of `vocabulary`
};

class TfidfError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Weights are raw term count times idf, then L2 normalized. Documents whose
/// vector is zero (only stop words, or only terms present everywhere) are
/// left out with a warning. Needs at least two documents and at least one
/// non-empty one.
TfidfIndex build_tfidf(const std::vector<std::pair<std::string, std::string>>& docs, const TokenizerOptions& opts = {});

}  // namespace litsynth
