#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "litsynth/text.hpp"

namespace litsynth {

enum class HyperparamKind {
    learning_rate,
    num_layers,
    hidden_size,
    embed_size,
    dropout,
    optimizer,
    batch_size,
    seq_length,
    grad_clip,
    epochs,
    steps,
    vocab_size,
    param_count,
    architecture,
    other,
};

/// Canonical hyperparameter name; `other` carries a free-form label.
struct HyperparamName {
    HyperparamKind kind = HyperparamKind::other;
    std::string label;  // only for `other`

    static HyperparamName parse(std::string_view s);
    std::string str() const;
    friend bool operator==(const HyperparamName&, const HyperparamName&) = default;
    friend auto operator<=>(const HyperparamName& a, const HyperparamName& b) { return a.str() <=> b.str(); }
};

enum class MetricKind { perplexity, accuracy, f1, bleu, other };

struct MetricName {
    MetricKind kind = MetricKind::other;
    std::string label;

    static MetricName parse(std::string_view s);
    std::string str() const;
    friend bool operator==(const MetricName&, const MetricName&) = default;
};

enum class Split { train, valid, test };
std::string_view to_string(Split s);
std::optional<Split> split_from_string(std::string_view s);

using FactValue = std::variant<double, std::string>;
std::string format_value(const FactValue& v);

struct HyperparamFact {
    HyperparamName name;
    FactValue value;
    std::optional<std::string> unit;  // "%", "K", "M", "B" as written
    Span span;                        // the value as it appears in the text
    std::string surface;              // text[span]
    friend bool operator==(const HyperparamFact&, const HyperparamFact&) = default;
};

struct ResultFact {
    MetricName metric;
    double value = 0;
    std::optional<std::string> dataset;
    std::optional<Split> split;
    Span span;
    std::string surface;
    friend bool operator==(const ResultFact&, const ResultFact&) = default;
};

struct CitationLink {
    std::string marker;  // text[span]
    std::optional<std::string> resolved_key;
    Span span;
    Span statement_span;
    friend bool operator==(const CitationLink&, const CitationLink&) = default;
};

struct Metadata {
    std::string title;
    std::vector<std::string> authors;
    std::optional<int> year;
    std::optional<std::string> venue;
    std::optional<std::string> abstract;
    friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct FactBundle {
    Metadata metadata;
    std::vector<HyperparamFact> hyperparams;
    std::vector<ResultFact> results;
    std::vector<CitationLink> citations;
    std::vector<std::string> warnings;
    friend bool operator==(const FactBundle&, const FactBundle&) = default;
};

void to_json(nlohmann::json& j, const HyperparamFact& f);
void from_json(const nlohmann::json& j, HyperparamFact& f);
void to_json(nlohmann::json& j, const ResultFact& f);
void from_json(const nlohmann::json& j, ResultFact& f);
void to_json(nlohmann::json& j, const CitationLink& c);
void from_json(const nlohmann::json& j, CitationLink& c);
void to_json(nlohmann::json& j, const Metadata& m);
void from_json(const nlohmann::json& j, Metadata& m);
void to_json(nlohmann::json& j, const FactBundle& b);
void from_json(const nlohmann::json& j, FactBundle& b);

}  // namespace litsynth
