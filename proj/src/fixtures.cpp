#include "litsynth/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "litsynth/ingestion.hpp"
#include "litsynth/pdf.hpp"
#include "litsynth/text.hpp"

namespace fs = std::filesystem;

namespace litsynth {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)) % n; }
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    bool coin(double p = 0.5) { return unit() < p; }
    template <typename T, std::size_t N>
    const T& pick(const T (&arr)[N]) {
        return arr[below(N)];
    }
    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 gen_;
};

const char* const kSubjects[] = {"the model",      "our decoder",       "the network",   "the sequence model",
                                 "the predictor",  "the language model", "this approach", "the proposed method"};
const char* const kVerbs[] = {"conditions on", "factorises", "predicts", "captures", "summarises", "attends to",
                              "generates",     "scores"};
const char* const kObjects[] = {"the preceding tokens",     "long range context",         "each next symbol",
                                "the joint distribution",   "the history of the sequence", "past observations",
                                "the left context",         "earlier events in the stream"};
const char* const kTails[] = {"without any lookahead",      "in a single left to right pass",
                              "one position at a time",     "with a shared set of weights",
                              "under a causal mask",        "while keeping training stable",
                              "at a modest compute budget", "across very long documents"};
const char* const kOpeners[] = {"In practice", "As a result", "Intuitively", "Concretely", "Moreover",
                                "By design",   "In contrast", "Empirically"};

const char* const kTitleAdjectives[] = {"Efficient", "Scalable", "Robust", "Deep", "Sparse", "Adaptive", "Simple",
                                        "Recurrent"};
const char* const kTitleNouns[] = {"Sequence Modelling", "Language Modelling", "Music Generation", "Event Prediction",
                                   "Text Generation",    "Next-Token Prediction"};

const char* const kFirstNames[] = {"Ana", "Bruno", "Chen", "Dana", "Emil", "Farah", "Goran", "Hana", "Ivo", "Jun"};
const char* const kLastNames[] = {"Okafor", "Lindqvist", "Moreau", "Tanaka", "Petrov", "Alvarez", "Novak",
                                  "Haddad", "Kowalski", "Brennan"};
const char* const kVenues[] = {"NeurIPS", "ICML", "ICLR", "ACL", "EMNLP", "TMLR"};

const char* const kRefTitles[] = {"Sequence models with gated memory", "Regularising recurrent networks",
                                  "Attention over long contexts",      "Tokenisation for symbolic music",
                                  "Scaling laws for next-token models", "Adaptive inputs for large vocabularies"};

// Off-topic material. Half of it still says "autoregressive".
const char* const kOffTopicTitles[] = {"Vector Autoregressions for Regional Inflation",
                                       "Autoregressive Spectral Estimates of EEG Rhythms",
                                       "Soil Moisture Mapping from Satellite Imagery",
                                       "Queueing Delays in Hospital Emergency Wards"};
const char* const kOffTopicSentences[] = {
    "We fit an autoregressive model of lag order chosen by an information criterion to quarterly price indices.",
    "Unit root tests confirm that the differenced series is stationary before estimation.",
    "Impulse responses trace how a monetary policy shock moves output and unemployment.",
    "The autoregressive spectral estimate separates alpha and beta rhythms in the scalp recordings.",
    "Electrode impedance was checked before each recording session with the patient at rest.",
    "Vegetation indices are computed from the red and near infrared bands of each tile.",
    "Ground truth probes were installed across farms in the river basin.",
    "Waiting times are modelled with a multi server queue fitted to triage records.",
    "Staffing schedules were obtained from the administrative office of each ward.",
    "Forecast errors of the econometric baseline are compared across regions and horizons.",
    "Seasonal adjustment removes calendar effects from the retail sales series.",
    "A bootstrap gives confidence bands for the estimated regression coefficients."};

const char* const kDistractors[] = {
    "All experiments ran on {n} GPUs hosted in a shared cluster.",
    "Preprocessing the raw files took about {n} hours on one machine.",
    "Every configuration was repeated with {n} random seeds.",
    "The released archive occupies roughly {n} MB on disk.",
    "Annotators checked {n} samples during a pilot study.",
    "The project was carried out over {n} months by a small team.",
    "Our evaluation server answers within {n} milliseconds on average."};

std::string capitalise(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

std::string filler_sentence(Rng& rng) {
    std::string s = rng.coin(0.3) ? std::string(rng.pick(kOpeners)) + ", " + rng.pick(kSubjects) : capitalise(rng.pick(kSubjects));
    return s + " " + rng.pick(kVerbs) + " " + rng.pick(kObjects) + " " + rng.pick(kTails) + ".";
}

std::size_t word_count(const std::string& s) {
    std::size_t n = 0;
    bool in = false;
    for (char c : s) {
        const bool space = c == ' ' || c == '\n';
        if (!space && !in) ++n;
        in = !space;
    }
    return n;
}

std::string paragraph(Rng& rng, std::size_t sentences) {
    std::string p;
    for (std::size_t i = 0; i < sentences; ++i) p += (i ? " " : "") + filler_sentence(rng);
    return p;
}

// Surfaces that parse back to exactly `v`.
std::string number_surface(const std::string& name, double v, Rng& rng) {
    const std::string plain = format_number(v);
    if ((name == "steps" || name == "vocab_size" || name == "param_count") && v >= 1000 && v == std::floor(v)) {
        const auto whole = static_cast<long long>(v);
        switch (rng.below(3)) {
            case 0: {
                std::string digits = std::to_string(whole), out;
                for (std::size_t i = 0; i < digits.size(); ++i) {
                    if (i && (digits.size() - i) % 3 == 0) out += ',';
                    out += digits[i];
                }
                return out;
            }
            case 1:
                if (whole % 1000000 == 0) return std::to_string(whole / 1000000) + "M";
                if (whole % 1000 == 0) return std::to_string(whole / 1000) + "K";
                return plain;
            default: return plain;
        }
    }
    if ((name == "dropout" || name == "dropout_emb") && rng.coin()) {
        const double pct = v * 100;
        if (std::abs(pct - std::round(pct)) < 1e-9 && std::round(pct) / 100 == v)
            return format_number(std::round(pct)) + "%";
    }
    return plain;
}

std::string list_surface(const std::vector<std::string>& items) {
    if (items.size() == 1) return items[0];
    std::string out;
    for (std::size_t i = 0; i + 1 < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out + " and " + items.back();
}

std::string hyper_sentence(const std::string& name, const std::string& v, Rng& rng) {
    static const std::map<std::string, std::vector<std::string>> phrases = {
        {"learning_rate", {"We train with a learning rate of {v}.", "The initial learning rate is set to {v}."}},
        {"num_layers", {"The network stacks {v} layers.", "Our configuration uses {v} layers in total."}},
        {"num_heads", {"Each attention block has {v} heads.", "We split attention into {v} heads."}},
        {"hidden_size", {"The hidden size is {v}.", "We set the hidden dimension to {v}."}},
        {"embed_size", {"The embedding size is {v}.", "Tokens are mapped with an embedding dimension of {v}."}},
        {"dropout", {"Dropout of {v} is applied to the outputs.", "We use a dropout rate of {v}."}},
        {"dropout_emb", {"Extra regularisation uses {v} on the embeddings."}},
        {"optimizer", {"Parameters are updated with {v}.", "Optimisation relies on {v} throughout."}},
        {"batch_size", {"We use a batch size of {v}.", "The mini-batch size is {v}."}},
        {"seq_length", {"The sequence length is {v}.", "Training uses a context length of {v}."}},
        {"grad_clip", {"Gradient clipping at {v} keeps updates stable.", "We clip gradients to a norm of {v}."}},
        {"epochs", {"Training runs for {v} epochs.", "We stop after {v} epochs."}},
        {"steps", {"The model is trained for {v} steps.", "Optimisation stops after {v} training steps."}},
        {"vocab_size", {"The vocabulary size is {v}.", "We use a vocabulary of {v}."}},
        {"param_count", {"The model has {v} parameters.", "This amounts to {v} trainable parameters."}},
        {"architecture", {"We build on {v} layers.", "The encoder relies on {v} layers."}},
    };
    const auto it = phrases.find(name);
    if (it == phrases.end()) throw FixtureError("no phrase for hyperparameter " + name);
    std::string s = rng.pick(it->second);
    s.replace(s.find("{v}"), 3, v);
    return s;
}

std::string result_sentence(const ResultFact& r, Rng& rng) {
    const std::string v = format_number(r.value);
    const std::string ds = r.dataset.value_or("the benchmark");
    const std::string split = r.split ? (*r.split == Split::valid ? "validation" : std::string(to_string(*r.split))) : "test";
    switch (r.metric.kind) {
        case MetricKind::perplexity:
            return rng.coin() ? "On the " + ds + " " + split + " set the model reaches a perplexity of " + v + "."
                              : "We obtain a " + split + " perplexity of " + v + " on " + ds + ".";
        case MetricKind::accuracy: return "On " + ds + " the " + split + " accuracy is " + v + "%.";
        case MetricKind::bleu: return "The model scores a BLEU of " + v + " on the " + ds + " " + split + " set.";
        case MetricKind::f1: return "On " + ds + " we measure an F1 of " + v + " on the " + split + " split.";
        case MetricKind::other: break;
    }
    throw FixtureError("no phrase for metric " + r.metric.str());
}

struct RefKey {
    std::string surname;
    std::string year;
};

RefKey split_key(const std::string& key) {
    std::size_t i = 0;
    while (i < key.size() && std::isalpha(static_cast<unsigned char>(key[i]))) ++i;
    if (i == 0 || key.size() < i + 4) throw FixtureError("citation key must be surname+year: " + key);
    return {capitalise(key.substr(0, i)), key.substr(i, 4)};
}

std::string full_id(const std::string& id) { return id.rfind("local:", 0) == 0 ? id : "local:" + id; }

std::vector<std::pair<std::string, std::string>> hyper_surfaces(const SyntheticPaperSpec& spec, Rng& rng) {
    // Values of the same name (hidden sizes per layer) go into one sentence.
    std::vector<std::pair<std::string, std::vector<std::string>>> grouped;
    for (const auto& h : spec.planted.hyperparams) {
        const std::string name = h.name.str();
        const std::string v = std::holds_alternative<double>(h.value)
                                  ? number_surface(name, std::get<double>(h.value), rng)
                                  : std::get<std::string>(h.value);
        auto it = std::find_if(grouped.begin(), grouped.end(), [&](const auto& g) { return g.first == name; });
        if (it == grouped.end()) grouped.push_back({name, {v}});
        else it->second.push_back(v);
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [name, vs] : grouped) out.emplace_back(name, list_surface(vs));
    return out;
}

std::string render_off_topic(const SyntheticPaperSpec& spec, Rng& rng) {
    std::string t = spec.planted.metadata.title.empty() ? std::string(rng.pick(kOffTopicTitles)) : spec.planted.metadata.title;
    t += "\n" + std::string(rng.pick(kFirstNames)) + " " + rng.pick(kLastNames) + "\n\nAbstract\n";
    std::string body;
    while (word_count(body) < spec.length_words) body += std::string(body.empty() ? "" : " ") + rng.pick(kOffTopicSentences);
    return t + body + "\n";
}

}  // namespace

std::string render_paper(const SyntheticPaperSpec& spec, std::uint64_t seed) {
    Rng rng(seed ^ fnv1a64(full_id(spec.canonical_id)));
    if (!spec.relevant) return render_off_topic(spec, rng);

    const Metadata& meta = spec.planted.metadata;
    std::string out;
    out += (meta.title.empty() ? std::string(rng.pick(kTitleAdjectives)) + " Autoregressive " + rng.pick(kTitleNouns)
                               : meta.title) +
           "\n";
    std::vector<std::string> authors = meta.authors;
    if (authors.empty())
        for (std::size_t i = 0, n = 2 + rng.below(2); i < n; ++i)
            authors.push_back(std::string(rng.pick(kFirstNames)) + " " + rng.pick(kLastNames));
    out += list_surface(authors) + "\n";
    out += meta.venue.value_or(rng.pick(kVenues)) + " " + std::to_string(meta.year.value_or(2015 + static_cast<int>(rng.below(9)))) +
           "\n\n";
    out += "Abstract\n";
    out += meta.abstract.value_or("We study autoregressive " + to_lower(rng.pick(kTitleNouns)) + ". " + paragraph(rng, 2)) +
           "\n\n";

    // Citation keys in order of first appearance; style fixed per paper.
    std::vector<std::string> keys;
    for (const auto& c : spec.planted.citations)
        if (c.resolved_key && std::find(keys.begin(), keys.end(), *c.resolved_key) == keys.end())
            keys.push_back(*c.resolved_key);
    const bool numeric = rng.coin();

    out += "Introduction\n";
    std::string intro = paragraph(rng, 2);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const RefKey k = split_key(keys[i]);
        if (numeric) intro += " Earlier work " + std::string(rng.pick(kVerbs)) + " " + rng.pick(kObjects) + " [" + std::to_string(i + 1) + "].";
        else if (rng.coin()) intro += " " + k.surname + " et al. (" + k.year + ") " + rng.pick(kVerbs) + " " + rng.pick(kObjects) + ".";
        else intro += " A related design " + std::string(rng.pick(kVerbs)) + " " + rng.pick(kObjects) + " (" + k.surname + " et al., " + k.year + ").";
    }
    out += intro + "\n\n";

    out += "Method\n" + paragraph(rng, 3) + "\n\n";

    out += "Experimental Setup\n";
    std::vector<std::string> setup;
    for (const auto& [name, v] : hyper_surfaces(spec, rng)) setup.push_back(hyper_sentence(name, v, rng));
    for (std::size_t i = 0; i < spec.noise.distractors; ++i) {
        std::string d = rng.pick(kDistractors);
        d.replace(d.find("{n}"), 3, std::to_string(2 + rng.below(60)));
        setup.insert(setup.begin() + static_cast<std::ptrdiff_t>(rng.below(setup.size() + 1)), d);
    }
    out += join(setup, " ") + "\n\n";

    out += "Results\n";
    std::vector<std::string> results;
    for (const auto& r : spec.planted.results) results.push_back(result_sentence(r, rng));
    out += (results.empty() ? paragraph(rng, 1) : join(results, " ")) + "\n\n";

    // Pad to the requested length with discussion text.
    std::string discussion;
    while (word_count(out) + word_count(discussion) + 4 * keys.size() + 8 < spec.length_words)
        discussion += (discussion.empty() ? "" : " ") + filler_sentence(rng);
    out += "Discussion\n" + (discussion.empty() ? paragraph(rng, 1) : discussion) + "\n\n";

    out += "References\n";
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const RefKey k = split_key(keys[i]);
        const std::string entry = std::string(1, rng.pick(kFirstNames)[0]) + ". " + k.surname + " and " +
                                  rng.pick(kFirstNames)[0] + ". " + rng.pick(kLastNames) + ". " + rng.pick(kRefTitles) +
                                  ". " + rng.pick(kVenues) + ", " + k.year + ".";
        out += numeric ? "[" + std::to_string(i + 1) + "] " + entry + "\n" : entry + "\n\n";
    }
    return out;
}

std::vector<GoldAnnotation> planted_gold(const SyntheticPaperSpec& spec) {
    const std::string id = full_id(spec.canonical_id);
    std::vector<GoldAnnotation> gold;
    GoldAnnotation rel{id, Task::relevance, {}};
    if (spec.relevant) rel.items.insert("relevant");
    gold.push_back(rel);
    if (!spec.relevant) return gold;
    GoldAnnotation h{id, Task::hyperparams, {}}, r{id, Task::results, {}}, c{id, Task::citations, {}};
    for (const auto& f : spec.planted.hyperparams) h.items.insert(hyperparam_item(f));
    for (const auto& f : spec.planted.results) r.items.insert(result_item(f));
    for (const auto& f : spec.planted.citations)
        if (f.resolved_key) c.items.insert(*f.resolved_key);
    gold.push_back(h);
    gold.push_back(r);
    gold.push_back(c);
    return gold;
}

GeneratedCorpus generate_corpus(const std::vector<SyntheticPaperSpec>& specs, std::uint64_t seed, const fs::path& dir,
                                CorpusFormat format) {
    if (specs.empty()) throw FixtureError("generate_corpus needs at least one spec");
    std::set<std::string> ids;
    for (const auto& s : specs)
        if (!ids.insert(full_id(s.canonical_id)).second) throw FixtureError("duplicate spec id " + full_id(s.canonical_id));

    fs::create_directories(dir);
    GeneratedCorpus corpus;
    corpus.dir = dir;
    for (const auto& spec : specs) {
        const std::string text = render_paper(spec, seed);
        PaperRecord r;
        r.source = Source::local_file;
        r.canonical_id = full_id(spec.canonical_id);
        r.local_id = r.canonical_id.substr(6);
        r.title = trim(text.substr(0, text.find('\n')));
        r.year = spec.planted.metadata.year.value_or(0);
        const fs::path file = dir / (cache_file_stem(r.canonical_id) + (format == CorpusFormat::pdf ? ".pdf" : ".txt"));
        write_file_atomic(file, format == CorpusFormat::pdf ? pdf::write_text_pdf(pdf::layout_pages(text)) : text);
        r.pdf_path = file;
        corpus.records.push_back(std::move(r));
        for (auto& g : planted_gold(spec)) corpus.gold.push_back(std::move(g));
    }
    write_manifest(dir, corpus.records);
    std::sort(corpus.records.begin(), corpus.records.end(),
              [](const auto& a, const auto& b) { return a.canonical_id < b.canonical_id; });
    save_gold(corpus.gold, dir / "gold.jsonl");
    return corpus;
}

std::vector<SyntheticPaperSpec> random_specs(std::size_t n, std::uint64_t seed, std::size_t length_words,
                                             NoiseProfile noise) {
    static const double lrs[] = {30, 20, 1, 0.1, 0.001, 3e-4, 2e-4, 5e-4, 0.00025};
    static const double layers[] = {2, 3, 4, 6, 12, 16, 18, 24};
    static const double hidden[] = {256, 400, 512, 650, 1024, 1150, 1500};
    static const double heads[] = {4, 8, 10, 12, 16};
    static const double dropouts[] = {0.1, 0.2, 0.25, 0.3, 0.4, 0.5};
    static const char* const optimizers[] = {"Adam", "SGD", "AdamW", "ASGD"};
    static const double batches[] = {16, 20, 32, 64, 80, 128};
    static const double seqs[] = {70, 128, 150, 256, 512};
    static const double clips[] = {0.25, 0.5, 1, 5};
    static const double epochs[] = {40, 100, 250, 500, 750};
    static const double steps[] = {50000, 100000, 200000, 400000, 800000};
    static const double vocabs[] = {512, 10000, 32000, 33278};
    static const char* const datasets[] = {"WikiText-2", "WikiText-103", "Penn Treebank", "enwik8", "Lakh MIDI",
                                           "MAESTRO"};
    static const char* const surnames[] = {"hochreiter", "vaswani", "merity", "dai", "huang", "graves", "bengio",
                                           "mikolov", "radford", "oord"};

    Rng rng(seed);
    std::vector<SyntheticPaperSpec> specs;
    for (std::size_t i = 0; i < n; ++i) {
        SyntheticPaperSpec s;
        char id[32];
        std::snprintf(id, sizeof id, "synth-%04zu", i + 1);
        s.canonical_id = id;
        s.length_words = length_words;
        s.noise = noise;
        s.planted.metadata.year = 2015 + static_cast<int>(rng.below(9));
        const auto add = [&](const char* name, FactValue v) {
            HyperparamFact f;
            f.name = HyperparamName::parse(name);
            f.value = std::move(v);
            s.planted.hyperparams.push_back(std::move(f));
        };
        add("learning_rate", rng.pick(lrs));
        add("num_layers", rng.pick(layers));
        add("hidden_size", rng.pick(hidden));
        if (rng.coin()) add("num_heads", rng.pick(heads));
        add("dropout", rng.pick(dropouts));
        add("optimizer", std::string(rng.pick(optimizers)));
        add("batch_size", rng.pick(batches));
        if (rng.coin()) add("seq_length", rng.pick(seqs));
        if (rng.coin()) add("grad_clip", rng.pick(clips));
        if (rng.coin()) add("epochs", rng.pick(epochs));
        else add("steps", rng.pick(steps));
        if (rng.coin(0.3)) add("vocab_size", rng.pick(vocabs));

        std::set<std::string> used;
        for (std::size_t k = 0, nr = 1 + rng.below(2); k < nr; ++k) {
            ResultFact r;
            r.metric = MetricName::parse("perplexity");
            r.value = static_cast<double>(150 + rng.below(1000)) / 10.0;
            const std::string ds = rng.pick(datasets);
            if (!used.insert(ds).second) continue;
            r.dataset = ds;
            r.split = rng.coin(0.7) ? Split::test : Split::valid;
            s.planted.results.push_back(r);
        }
        std::set<std::string> keys;
        for (std::size_t k = 0, nc = 2 + rng.below(3); k < nc; ++k)
            keys.insert(std::string(rng.pick(surnames)) + std::to_string(2000 + rng.below(23)));
        for (const auto& key : keys) {
            CitationLink c;
            c.resolved_key = key;
            s.planted.citations.push_back(c);
        }
        specs.push_back(std::move(s));
    }
    return specs;
}

std::vector<std::pair<std::string, bool>> relevance_training_set(std::size_t per_class, std::uint64_t seed) {
    static const char* const on_topic[] = {
        "Autoregressive language models predict each token from the tokens before it.",
        "We train a recurrent network for word level language modelling and report perplexity.",
        "A causal transformer decoder generates text one token at a time.",
        "Next-token prediction with attention over a long memory improves generation quality.",
        "The music transformer models sequences of note events with relative attention.",
        "We study autoregressive sequence models for symbolic music generation.",
        "Regularising LSTM language models with weight dropping lowers validation perplexity.",
        "Segment level recurrence lets the decoder reuse hidden states from earlier segments.",
        "Neural temporal point processes model arrival times autoregressively with a recurrent encoder.",
        "Autoregressive models of speech waveforms generate audio sample by sample.",
        "Pretrained autoregressive transformers are fine tuned for downstream text generation.",
        "Character level models of text are trained with truncated backpropagation through time."};
    Rng rng(seed);
    std::vector<std::pair<std::string, bool>> out;
    for (std::size_t i = 0; i < per_class; ++i) {
        std::string pos = rng.pick(on_topic);
        for (std::size_t k = 0, n = 2 + rng.below(3); k < n; ++k)
            pos += " " + (rng.coin(0.6) ? filler_sentence(rng) : std::string(rng.pick(on_topic)));
        out.emplace_back(pos, true);

        std::string neg = rng.pick(kOffTopicTitles);
        neg += ". ";
        for (std::size_t k = 0, n = 3 + rng.below(3); k < n; ++k) neg += std::string(k ? " " : "") + rng.pick(kOffTopicSentences);
        out.emplace_back(neg, false);
    }
    return out;
}

}  // namespace litsynth
