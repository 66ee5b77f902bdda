#include "litsynth/facts.hpp"

#include <array>
#include <utility>

namespace litsynth {

namespace {

constexpr std::array<std::pair<HyperparamKind, std::string_view>, 14> kHyperNames = {{
    {HyperparamKind::learning_rate, "learning_rate"},
    {HyperparamKind::num_layers, "num_layers"},
    {HyperparamKind::hidden_size, "hidden_size"},
    {HyperparamKind::embed_size, "embed_size"},
    {HyperparamKind::dropout, "dropout"},
    {HyperparamKind::optimizer, "optimizer"},
    {HyperparamKind::batch_size, "batch_size"},
    {HyperparamKind::seq_length, "seq_length"},
    {HyperparamKind::grad_clip, "grad_clip"},
    {HyperparamKind::epochs, "epochs"},
    {HyperparamKind::steps, "steps"},
    {HyperparamKind::vocab_size, "vocab_size"},
    {HyperparamKind::param_count, "param_count"},
    {HyperparamKind::architecture, "architecture"},
}};

constexpr std::array<std::pair<MetricKind, std::string_view>, 4> kMetricNames = {{
    {MetricKind::perplexity, "perplexity"},
    {MetricKind::accuracy, "accuracy"},
    {MetricKind::f1, "f1"},
    {MetricKind::bleu, "bleu"},
}};

template <typename T>
void put_opt(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}
template <typename T>
void get_opt(const nlohmann::json& j, const char* key, std::optional<T>& v) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) v = it->get<T>();
}

nlohmann::json span_json(Span s) { return nlohmann::json::array({s.begin, s.end}); }
Span span_from(const nlohmann::json& j) { return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()}; }

}  // namespace

HyperparamName HyperparamName::parse(std::string_view s) {
    for (const auto& [kind, name] : kHyperNames)
        if (name == s) return {kind, {}};
    return {HyperparamKind::other, std::string(s)};
}

std::string HyperparamName::str() const {
    for (const auto& [k, name] : kHyperNames)
        if (k == kind) return std::string(name);
    return label;
}

MetricName MetricName::parse(std::string_view s) {
    for (const auto& [kind, name] : kMetricNames)
        if (name == s) return {kind, {}};
    return {MetricKind::other, std::string(s)};
}

std::string MetricName::str() const {
    for (const auto& [k, name] : kMetricNames)
        if (k == kind) return std::string(name);
    return label;
}

std::string_view to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::valid: return "valid";
        case Split::test: return "test";
    }
    return "test";
}

std::optional<Split> split_from_string(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "valid") return Split::valid;
    if (s == "test") return Split::test;
    return std::nullopt;
}

std::string format_value(const FactValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
    return std::get<std::string>(v);
}

void to_json(nlohmann::json& j, const HyperparamFact& f) {
    j = {{"name", f.name.str()}, {"span", span_json(f.span)}, {"surface", f.surface}};
    if (const auto* d = std::get_if<double>(&f.value)) j["value"] = *d;
    else j["value"] = std::get<std::string>(f.value);
    put_opt(j, "unit", f.unit);
}

void from_json(const nlohmann::json& j, HyperparamFact& f) {
    f.name = HyperparamName::parse(j.at("name").get<std::string>());
    const auto& v = j.at("value");
    if (v.is_number()) f.value = v.get<double>();
    else f.value = v.get<std::string>();
    f.unit.reset();
    get_opt(j, "unit", f.unit);
    f.span = span_from(j.at("span"));
    f.surface = j.at("surface").get<std::string>();
}

void to_json(nlohmann::json& j, const ResultFact& f) {
    j = {{"metric", f.metric.str()}, {"value", f.value}, {"span", span_json(f.span)}, {"surface", f.surface}};
    put_opt(j, "dataset", f.dataset);
    if (f.split) j["split"] = to_string(*f.split);
}

void from_json(const nlohmann::json& j, ResultFact& f) {
    f.metric = MetricName::parse(j.at("metric").get<std::string>());
    f.value = j.at("value").get<double>();
    f.dataset.reset();
    get_opt(j, "dataset", f.dataset);
    f.split.reset();
    if (auto it = j.find("split"); it != j.end()) f.split = split_from_string(it->get<std::string>());
    f.span = span_from(j.at("span"));
    f.surface = j.at("surface").get<std::string>();
}

void to_json(nlohmann::json& j, const CitationLink& c) {
    j = {{"marker", c.marker}, {"span", span_json(c.span)}, {"statement_span", span_json(c.statement_span)}};
    put_opt(j, "resolved_key", c.resolved_key);
}

void from_json(const nlohmann::json& j, CitationLink& c) {
    c.marker = j.at("marker").get<std::string>();
    c.resolved_key.reset();
    get_opt(j, "resolved_key", c.resolved_key);
    c.span = span_from(j.at("span"));
    c.statement_span = span_from(j.at("statement_span"));
}

void to_json(nlohmann::json& j, const Metadata& m) {
    j = {{"title", m.title}, {"authors", m.authors}};
    put_opt(j, "year", m.year);
    put_opt(j, "venue", m.venue);
    put_opt(j, "abstract", m.abstract);
}

void from_json(const nlohmann::json& j, Metadata& m) {
    m = Metadata{};
    m.title = j.value("title", "");
    m.authors = j.value("authors", std::vector<std::string>{});
    get_opt(j, "year", m.year);
    get_opt(j, "venue", m.venue);
    get_opt(j, "abstract", m.abstract);
}

void to_json(nlohmann::json& j, const FactBundle& b) {
    j = {{"metadata", b.metadata},
         {"hyperparams", b.hyperparams},
         {"results", b.results},
         {"citations", b.citations}};
    if (!b.warnings.empty()) j["warnings"] = b.warnings;
}

void from_json(const nlohmann::json& j, FactBundle& b) {
    b.metadata = j.at("metadata").get<Metadata>();
    b.hyperparams = j.at("hyperparams").get<std::vector<HyperparamFact>>();
    b.results = j.at("results").get<std::vector<ResultFact>>();
    b.citations = j.at("citations").get<std::vector<CitationLink>>();
    b.warnings = j.value("warnings", std::vector<std::string>{});
}

}  // namespace litsynth
