#include "litsynth/relevance.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "litsynth/text.hpp"

namespace litsynth {

std::string_view to_string(DecidingStage s) { return s == DecidingStage::keyword ? "keyword" : "classifier"; }

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

SparseVector features(const RelevanceModel& m, std::string_view text) {
    std::map<std::size_t, double> counts;
    for (const auto& t : content_tokens(text)) {
        auto it = m.vocabulary.find(t);
        if (it != m.vocabulary.end()) counts[it->second] += 1.0;
    }
    SparseVector v;
    for (const auto& [i, c] : counts)
        if (m.idf[i] > 0) v.emplace_back(i, c * m.idf[i]);
    normalize(v);
    return v;
}

std::string collapse_spaces(std::string s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            space = true;
            continue;
        }
        if (space && !out.empty()) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

bool alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

double RelevanceModel::score(std::string_view text) const {
    double z = bias;
    for (const auto& [i, x] : features(*this, text)) z += weights[i] * x;
    return sigmoid(z);
}

RelevanceModel train_classifier(const std::vector<std::pair<std::string, bool>>& labelled, std::uint64_t seed,
                                const TrainingOptions& opts) {
    std::size_t positives = 0;
    for (const auto& [text, label] : labelled) positives += label;
    if (positives == 0 || positives == labelled.size())
        throw TrainingError("relevance training data must contain both relevant and irrelevant examples");

    RelevanceModel model;
    model.seed = seed;
    model.threshold = opts.threshold;

    std::vector<std::pair<std::string, std::string>> docs;
    docs.reserve(labelled.size());
    for (std::size_t i = 0; i < labelled.size(); ++i) docs.emplace_back(std::to_string(i), labelled[i].first);
    const TfidfIndex index = build_tfidf(docs);
    model.vocabulary = index.vocabulary;
    model.idf = index.idf;

    std::vector<SparseVector> x;
    std::vector<double> y, sample_weight;
    const double n = static_cast<double>(labelled.size());
    const double w_pos = n / (2.0 * static_cast<double>(positives));
    const double w_neg = n / (2.0 * static_cast<double>(labelled.size() - positives));
    for (std::size_t i = 0; i < labelled.size(); ++i) {
        x.push_back(features(model, labelled[i].first));
        y.push_back(labelled[i].second ? 1.0 : 0.0);
        sample_weight.push_back(labelled[i].second ? w_pos : w_neg);
    }

    // Portable uniform draws: top 53 bits of the engine output.
    std::mt19937_64 rng(seed);
    model.weights.resize(model.idf.size());
    for (auto& w : model.weights) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        w = (u - 0.5) * 0.02;
    }

    std::vector<double> grad(model.weights.size());
    for (int epoch = 0; epoch < opts.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_bias = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double z = model.bias;
            for (const auto& [k, v] : x[i]) z += model.weights[k] * v;
            const double err = (sigmoid(z) - y[i]) * sample_weight[i];
            for (const auto& [k, v] : x[i]) grad[k] += err * v;
            grad_bias += err;
        }
        for (std::size_t k = 0; k < model.weights.size(); ++k)
            model.weights[k] -= opts.learning_rate * (grad[k] / n + opts.l2 * model.weights[k]);
        model.bias -= opts.learning_rate * grad_bias / n;
    }
    return model;
}

void save_model(const RelevanceModel& model, const std::filesystem::path& path) {
    nlohmann::json vocab = nlohmann::json::array();
    for (const auto& [token, i] : model.vocabulary) vocab.push_back({token, model.idf[i], model.weights[i]});
    nlohmann::json j = {{"format", "litsynth-relevance-model"},
                        {"version", 1},
                        {"seed", model.seed},
                        {"threshold", model.threshold},
                        {"bias", model.bias},
                        {"vocabulary", vocab}};
    write_file_atomic(path, j.dump(1) + "\n");
}

RelevanceModel load_model(const std::filesystem::path& path) {
    const auto j = nlohmann::json::parse(read_file(path));
    if (j.value("format", "") != "litsynth-relevance-model") throw std::runtime_error(path.string() + ": not a relevance model");
    RelevanceModel m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.threshold = j.at("threshold").get<double>();
    m.bias = j.at("bias").get<double>();
    for (const auto& entry : j.at("vocabulary")) {
        m.vocabulary.emplace(entry.at(0).get<std::string>(), m.idf.size());
        m.idf.push_back(entry.at(1).get<double>());
        m.weights.push_back(entry.at(2).get<double>());
    }
    return m;
}

std::vector<std::string> load_keywords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open keyword list " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(std::move(t));
    }
    return out;
}

bool keyword_filter(std::string_view text, const std::vector<std::string>& keywords, bool fold_hyphens) {
    if (keywords.empty()) throw std::invalid_argument("keyword list must be non-empty");
    const std::string hay = collapse_spaces(fold_hyphens ? fold_for_matching(text) : to_lower(text));
    for (const auto& kw : keywords) {
        const std::string needle = collapse_spaces(fold_hyphens ? fold_for_matching(kw) : to_lower(kw));
        if (needle.empty()) continue;
        for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
            const bool left_ok = pos == 0 || !alnum(hay[pos - 1]);
            std::size_t end = pos + needle.size();
            if (end < hay.size() && hay[end] == 's' && (end + 1 == hay.size() || !alnum(hay[end + 1]))) ++end;
            const bool right_ok = end == hay.size() || !alnum(hay[end]);
            if (left_ok && right_ok) return true;
        }
    }
    return false;
}

std::string_view relevance_view(std::string_view text, std::size_t max_words) {
    std::size_t words = 0;
    bool in_word = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const bool space = text[i] == ' ' || text[i] == '\n' || text[i] == '\t';
        if (!space && !in_word && ++words > max_words) return text.substr(0, i);
        in_word = !space;
    }
    return text;
}

RelevanceDecision classify(const RelevanceModel* model, std::string_view text, const std::vector<std::string>& keywords,
                           std::string canonical_id) {
    RelevanceDecision d;
    d.canonical_id = std::move(canonical_id);
    const auto view = relevance_view(text);
    d.keyword_hit = !trim(view).empty() && keyword_filter(view, keywords);
    d.relevant = d.keyword_hit;
    d.deciding_stage = DecidingStage::keyword;
    if (!d.keyword_hit || model == nullptr) return d;
    d.classifier_score = model->score(view);
    d.relevant = *d.classifier_score >= model->threshold;
    d.deciding_stage = DecidingStage::classifier;
    return d;
}

}  // namespace litsynth
