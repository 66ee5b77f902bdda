#include "litsynth/tfidf.hpp"

#include <cmath>

#include "litsynth/text.hpp"

namespace litsynth {

double dot(const SparseVector& a, const SparseVector& b) {
    double s = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->first < j->first) ++i;
        else if (j->first < i->first) ++j;
        else {
            s += i->second * j->second;
            ++i;
            ++j;
        }
    }
    return s;
}

double norm(const SparseVector& v) {
    double s = 0;
    for (const auto& [i, w] : v) s += w * w;
    return std::sqrt(s);
}

void normalize(SparseVector& v) {
    const double n = norm(v);
    if (n == 0) {
        v.clear();
        return;
    }
    for (auto& [i, w] : v) w /= n;
}

const std::set<std::string, std::less<>>& default_stop_words() {
    static const std::set<std::string, std::less<>> kStop = {
        "a",     "about", "above", "after", "again", "all",   "also",  "am",    "an",    "and",   "any",
        "are",   "as",    "at",    "be",    "been",  "before", "being", "below", "between", "both", "but",
        "by",    "can",   "could", "did",   "do",    "does",  "doing", "down",  "during", "each", "few",
        "for",   "from",  "further", "had", "has",   "have",  "having", "he",   "her",   "here",  "hers",
        "him",   "his",   "how",   "i",     "if",    "in",    "into",  "is",    "it",    "its",   "itself",
        "just",  "more",  "most",  "my",    "no",    "nor",   "not",   "now",   "of",    "off",   "on",
        "once",  "only",  "or",    "other", "our",   "ours",  "out",   "over",  "own",   "same",  "she",
        "should", "so",   "some",  "such",  "than",  "that",  "the",   "their", "theirs", "them", "then",
        "there", "these", "they",  "this",  "those", "through", "to",  "too",   "under", "until", "up",
        "very",  "was",   "we",    "were",  "what",  "when",  "where", "which", "while", "who",   "whom",
        "why",   "will",  "with",  "would", "you",   "your",  "yours", "using", "use",   "used",  "via",
        "et",    "al",    "e",     "g",     "ie",    "eg",    "may",   "might", "must",  "shall", "us"};
    return kStop;
}

std::vector<std::string> content_tokens(std::string_view text, const TokenizerOptions& opts) {
    auto tokens = tokenize_words(text);
    std::erase_if(tokens, [&](const std::string& t) {
        return t.size() < opts.min_token_length || (opts.stop_words && opts.stop_words->count(t));
    });
    return tokens;
}

SparseVector TfidfIndex::transform(std::string_view text) const {
    std::map<std::size_t, double> counts;
    for (const auto& t : content_tokens(text, tokenizer)) {
        auto it = vocabulary.find(t);
        if (it != vocabulary.end()) counts[it->second] += 1.0;
    }
    SparseVector v;
    for (const auto& [i, c] : counts)
        if (idf[i] > 0) v.emplace_back(i, c * idf[i]);
    normalize(v);
    return v;
}

TfidfIndex build_tfidf(const std::vector<std::pair<std::string, std::string>>& docs, const TokenizerOptions& opts) {
    if (docs.size() < 2) throw TfidfError("TF-IDF needs at least two documents");
    TfidfIndex index;
    index.tokenizer = opts;

    std::vector<std::map<std::string, double>> counts(docs.size());
    std::map<std::string, std::size_t> df;
    bool any_tokens = false;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (auto& t : content_tokens(docs[d].second, opts)) counts[d][t] += 1.0;
        for (const auto& [t, c] : counts[d]) ++df[t];
        any_tokens |= !counts[d].empty();
    }
    if (!any_tokens) throw TfidfError("all documents are empty after tokenization");

    const double n_docs = static_cast<double>(docs.size());
    for (const auto& [t, f] : df) {
        index.vocabulary.emplace(t, index.idf.size());
        index.terms.push_back(t);
        index.idf.push_back(std::log(n_docs / static_cast<double>(f)));
    }
    for (std::size_t d = 0; d < docs.size(); ++d) {
        SparseVector v;
        for (const auto& [t, c] : counts[d]) {
            const std::size_t i = index.vocabulary.at(t);
            if (index.idf[i] > 0) v.emplace_back(i, c * index.idf[i]);
        }
        normalize(v);
        if (v.empty()) {
            index.warnings.push_back(docs[d].first + ": zero TF-IDF vector, excluded");
            continue;
        }
        index.doc_vectors[docs[d].first] = std::move(v);
    }
    return index;
}

}  // namespace litsynth
