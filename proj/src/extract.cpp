#include "litsynth/extract.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "litsynth/text.hpp"

namespace litsynth {

namespace {

using boost::regex;
constexpr auto kFlags = regex::perl | regex::icase;

const regex& ref_heading_re() {
    static const regex re(R"(^[ \t]*(?:\d+\.?[ \t]*)?(?:references|bibliography|works cited|literature cited)[ \t]*:?[ \t]*$)",
                          kFlags);
    return re;
}

const regex& number_re(UnitMode unit) {
    static const regex plain(number_pattern(UnitMode::plain), kFlags);
    static const regex scale(number_pattern(UnitMode::scale), kFlags);
    static const regex keep(number_pattern(UnitMode::keep), kFlags);
    switch (unit) {
        case UnitMode::plain: return plain;
        case UnitMode::scale: return scale;
        case UnitMode::keep: return keep;
    }
    return plain;
}

// Digits inside citation markers, figure/section references and dataset
// names are not values.
const std::vector<regex>& mask_patterns() {
    static const std::vector<regex> res = {
        regex(R"(\[[^\[\]]{0,120}\])", kFlags),
        regex(R"(\([^()]{0,160}?\b(?:19|20)\d\d[a-z]?\))", kFlags),
        regex(R"(\\cite\w*\*?(?:\[[^\]]*\])?\{[^}]*\})", kFlags),
        regex(R"(\b(?:table|tab\.|figure|fig\.|section|sec\.|eq\.|eqn\.|equation|algorithm|appendix|chapter|step|line)\s*\(?\d+(?:\.\d+)*)",
              kFlags),
    };
    return res;
}

void mask_digits(std::string& s, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e && i < s.size(); ++i)
        if (std::isdigit(static_cast<unsigned char>(s[i]))) s[i] = '#';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// True when the number at `span` is one end of a range such as "0.3-0.5".
bool part_of_range(std::string_view text, Span span) {
    static const regex before(R"(\d(?:[KMB%]|\s*(?:million|billion))?\s*(?:-{1,2}|\xE2\x80\x93|\xE2\x80\x94|to)\s*$)", kFlags);
    static const regex after(R"(^\s*(?:-{1,2}|\xE2\x80\x93|\xE2\x80\x94|to)\s*\d)", kFlags);
    const std::size_t lo = span.begin >= 12 ? span.begin - 12 : 0;
    const std::string pre(text.substr(lo, span.begin - lo));
    const std::string post(text.substr(span.end, std::min<std::size_t>(12, text.size() - span.end)));
    return boost::regex_search(pre, before) || boost::regex_search(post, after);
}

struct Generic {
    std::string name;
    regex re;
};

std::string generic_source(const std::string& phrase) {
    return "\\b(?:" + phrase + ")\\s*(?:=|:|of|is|was)\\s*(?<value>" + number_pattern(UnitMode::plain) + ")";
}

const std::vector<Generic>& generic_hyper() {
    static const std::vector<Generic> g = [] {
        const std::vector<std::pair<std::string, std::string>> phrases = {
            {"learning_rate", "learning rate|lr"},
            {"dropout", "dropout(?: rate)?"},
            {"batch_size", "batch size"},
            {"hidden_size", "hidden size|hidden dimension"},
            {"embed_size", "embedding size|embedding dimension"},
            {"num_layers", "number of layers"},
            {"epochs", "epochs"},
            {"steps", "training steps|steps"},
            {"seq_length", "sequence length|context length"},
            {"grad_clip", "gradient clipping|gradient norm"},
            {"vocab_size", "vocabulary size"},
        };
        std::vector<Generic> out;
        for (const auto& [name, phrase] : phrases) out.push_back({name, regex(generic_source(phrase), kFlags)});
        return out;
    }();
    return g;
}

const std::vector<Generic>& generic_results() {
    static const std::vector<Generic> g = [] {
        std::vector<Generic> out;
        out.push_back({"perplexity", regex(generic_source("perplexity"), kFlags)});
        out.push_back({"accuracy", regex(generic_source("accuracy"), kFlags)});
        out.push_back({"bleu", regex(generic_source("bleu"), kFlags)});
        out.push_back({"f1", regex(generic_source("f1"), kFlags)});
        return out;
    }();
    return g;
}

std::optional<std::string> nearest_dataset(const std::vector<GazetteerEntry>& gaz, std::string_view sentence, Span local) {
    const std::string s(sentence);
    std::optional<std::string> best;
    std::size_t best_dist = std::string::npos;
    for (const auto& entry : gaz) {
        for (boost::sregex_iterator it(s.begin(), s.end(), entry.pattern), end; it != end; ++it) {
            const std::size_t b = static_cast<std::size_t>(it->position());
            const std::size_t e = b + static_cast<std::size_t>(it->length());
            // Prefer names after the value ("19.5 on WikiText-103") on ties.
            const std::size_t dist = b >= local.end ? (b - local.end) * 2 : e <= local.begin ? (local.begin - e) * 2 + 1 : 0;
            if (dist < best_dist) {
                best_dist = dist;
                best = entry.name;
            }
        }
    }
    return best;
}

std::optional<Split> nearest_split(std::string_view sentence, Span local) {
    static const regex re(R"(\b(test|validation|valid|dev|development|train|training)\b)", kFlags);
    const std::string s(sentence);
    std::optional<Split> best;
    std::size_t best_dist = std::string::npos;
    for (boost::sregex_iterator it(s.begin(), s.end(), re), end; it != end; ++it) {
        const std::size_t b = static_cast<std::size_t>(it->position());
        const std::size_t e = b + static_cast<std::size_t>(it->length());
        const std::size_t dist = b >= local.end ? b - local.end : e <= local.begin ? local.begin - e : 0;
        if (dist >= best_dist) continue;
        best_dist = dist;
        const std::string w = to_lower(it->str(1));
        if (w == "test") best = Split::test;
        else if (w == "train" || w == "training") best = Split::train;
        else best = Split::valid;
    }
    return best;
}

// --- citations -------------------------------------------------------------

bool is_initial(std::string_view tok) {
    static const regex re(R"(^(?:[A-Z]\.?)(?:-?[A-Z]\.?)*$)");
    return boost::regex_match(tok.begin(), tok.end(), re);
}

std::string letters_lower(std::string_view s) {
    std::string out;
    for (char c : s)
        if (std::isalpha(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string surname_of(std::string_view author) {
    std::vector<std::string> kept;
    for (const auto& tok : split(author, ' ')) {
        const std::string t = trim(tok);
        if (t.empty() || is_initial(t)) continue;
        kept.push_back(t);
    }
    return kept.empty() ? std::string{} : letters_lower(kept.back());
}

// First author's surname from the start of a reference entry.
std::string entry_surname(std::string_view entry) {
    std::size_t cut = entry.size();
    for (std::string_view stop : {",", " and ", " & ", "("}) cut = std::min(cut, entry.find(stop));
    for (std::size_t i = 2; i + 1 < cut; ++i) {
        if (entry[i] == '.' && entry[i + 1] == ' ' && std::isalpha(static_cast<unsigned char>(entry[i - 1])) &&
            std::isalpha(static_cast<unsigned char>(entry[i - 2]))) {
            cut = i;
            break;
        }
    }
    return surname_of(entry.substr(0, cut));
}

// Surname of the first author named in an in-text marker.
std::string marker_surname(std::string names) {
    // Markers can wrap across lines.
    for (char& c : names)
        if (c == '\n' || c == '\t' || c == '\r') c = ' ';
    names = boost::regex_replace(names, regex(" {2,}"), " ");
    for (std::string_view stop : {" et al", " and ", " & ", ","}) {
        const auto p = names.find(stop);
        if (p != std::string::npos) names.resize(p);
    }
    return surname_of(names);
}

struct Reference {
    std::string key;
    std::optional<int> number;
    std::string text;
};

std::vector<Reference> parse_references(std::string_view region) {
    std::vector<Reference> refs;
    static const regex bibitem(R"(\\bibitem(?:\[[^\]]*\])?\{([^}]+)\})");
    const std::string r(region);
    for (boost::sregex_iterator it(r.begin(), r.end(), bibitem), end; it != end; ++it)
        refs.push_back({trim(it->str(1)), std::nullopt, {}});
    if (!refs.empty()) return refs;

    static const regex numbered(R"(^\s*(?:\[(\d+)\]|(\d+)\.)\s+(.*)$)");
    const auto lines = split(region, '\n');
    bool numbered_mode = false;
    for (const auto& l : lines)
        if (boost::regex_match(l, numbered)) numbered_mode = true;

    std::vector<Reference> raw;
    bool open = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {  // line 0 is the heading
        const std::string t = trim(lines[i]);
        if (t.empty()) {
            open = false;
            continue;
        }
        boost::smatch m;
        if (numbered_mode) {
            if (boost::regex_match(t, m, numbered)) {
                raw.push_back({{}, std::stoi(m[1].matched ? m.str(1) : m.str(2)), m.str(3)});
                open = true;
            } else if (open) {
                raw.back().text += " " + t;
            }
            continue;
        }
        static const regex particle(R"(^(?:van|von|der|den|de|du|da|di|le|la)\s+\S.*)");
        const bool name_start = std::isupper(static_cast<unsigned char>(t[0])) || boost::regex_match(t, particle);
        const bool new_entry = !open || (raw.back().text.back() == '.' && name_start);
        if (new_entry) raw.push_back({{}, std::nullopt, t});
        else raw.back().text += " " + t;
        open = true;
    }

    static const regex year_re(R"(\b((?:19|20)\d\d)([a-z])?\b)");
    std::map<std::string, int> seen;
    for (auto& ref : raw) {
        boost::smatch m;
        const std::string surname = entry_surname(ref.text);
        if (!surname.empty() && boost::regex_search(ref.text, m, year_re)) ref.key = surname + m.str(1) + m.str(2);
        else if (ref.number) ref.key = "ref" + std::to_string(*ref.number);
        else continue;
        ++seen[ref.key];
        refs.push_back(ref);
    }
    // Same author and year twice: disambiguate in order, as bibliographies do.
    std::map<std::string, int> next;
    for (auto& ref : refs)
        if (seen[ref.key] > 1) ref.key += static_cast<char>('a' + next[ref.key]++);
    return refs;
}

std::vector<int> expand_numbers(const std::string& list) {
    static const regex item(R"((\d+)(?:\s*(?:-|\xE2\x80\x93)\s*(\d+))?)");
    std::vector<int> out;
    for (boost::sregex_iterator it(list.begin(), list.end(), item), end; it != end; ++it) {
        const int a = std::stoi(it->str(1));
        const int b = (*it)[2].matched ? std::stoi(it->str(2)) : a;
        for (int n = a; n <= b && n - a < 50; ++n) out.push_back(n);
    }
    return out;
}

Span trimmed(std::string_view text, std::size_t b, std::size_t e) {
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return {b, e};
}

// --- metadata --------------------------------------------------------------

const regex& venue_re() {
    static const regex re(
        R"(\b(ICLR|NeurIPS|NIPS|ICML|ACL|EMNLP|NAACL|EACL|COLING|AAAI|IJCAI|ISMIR|ICASSP|Interspeech|CVPR|ICCV|ECCV|TACL|JMLR|TMLR|KDD|UAI|AISTATS|arXiv)\b)");
    return re;
}

const regex& year_re() {
    static const regex re(R"(\b(19[5-9]\d|20[0-4]\d)\b)");
    return re;
}

bool is_abstract_line(std::string_view line) { return starts_with_icase(trim(line), "abstract"); }

}  // namespace

std::size_t find_reference_section(std::string_view text) {
    const std::string s(text);
    std::size_t found = std::string_view::npos;
    for (boost::sregex_iterator it(s.begin(), s.end(), ref_heading_re()), end; it != end; ++it)
        found = static_cast<std::size_t>(it->position());
    return found;
}

std::vector<HyperparamFact> dedup_hyperparams(std::vector<HyperparamFact> facts) {
    std::stable_sort(facts.begin(), facts.end(), [](const auto& a, const auto& b) {
        if (a.span != b.span) return a.span < b.span;
        return a.name.str() < b.name.str();
    });
    // "dropout_emb" specialises "dropout": on a shared span the general name loses.
    const auto specialises = [](const HyperparamFact& a, const HyperparamFact& b) {
        const std::string x = a.name.str(), y = b.name.str();
        return x.size() > y.size() && x.compare(0, y.size() + 1, y + "_") == 0;
    };
    std::vector<HyperparamFact> out;
    for (auto& f : facts) {
        const bool dup = std::any_of(facts.begin(), facts.end(), [&](const HyperparamFact& g) {
            return g.span == f.span && specialises(g, f);
        }) || std::any_of(out.begin(), out.end(), [&](const HyperparamFact& g) {
            return g.name == f.name && g.value == f.value && g.span.overlaps(f.span);
        });
        if (!dup) out.push_back(f);
    }
    return out;
}

Extractor::Extractor(std::vector<Rule> rules, std::vector<GazetteerEntry> gazetteer)
    : rules_(std::move(rules)), gazetteer_(std::move(gazetteer)) {}

Extractor Extractor::load(const std::filesystem::path& data_dir) {
    return Extractor(load_rules(data_dir / "rules" / "extraction.rules"),
                     load_gazetteer(data_dir / "gazetteer" / "datasets.txt"));
}

std::string Extractor::mask(std::string_view sentence) const {
    std::string m(sentence);
    const std::string src(sentence);
    const auto apply = [&](const regex& re) {
        for (boost::sregex_iterator it(src.begin(), src.end(), re), end; it != end; ++it) {
            const auto b = static_cast<std::size_t>(it->position());
            mask_digits(m, b, b + static_cast<std::size_t>(it->length()));
        }
    };
    for (const auto& g : gazetteer_) apply(g.pattern);
    for (const auto& re : mask_patterns()) apply(re);
    return m;
}

std::vector<HyperparamFact> Extractor::extract_hyperparams(std::string_view text, const ExtractOptions& opts) const {
    const std::string_view body = text.substr(0, std::min(text.size(), find_reference_section(text)));
    std::vector<HyperparamFact> facts;

    const auto emit_number = [&](const std::string& name, UnitMode unit, Span span) {
        if (part_of_range(text, span)) return;
        const std::string_view surface = slice(text, span);
        const auto parsed = parse_number(surface, unit);
        if (!parsed) return;
        facts.push_back({HyperparamName::parse(name), parsed->value, parsed->unit, span, std::string(surface)});
    };

    for (const Span sent : split_sentences(body)) {
        const std::string masked = mask(slice(body, sent));
        if (!opts.rule_patterns) {
            for (const auto& g : generic_hyper()) {
                for (boost::sregex_iterator it(masked.begin(), masked.end(), g.re), end; it != end; ++it) {
                    const auto b = sent.begin + static_cast<std::size_t>(it->position("value"));
                    emit_number(g.name, UnitMode::plain, {b, b + static_cast<std::size_t>(it->length("value"))});
                }
            }
            continue;
        }
        for (const Rule& rule : rules_) {
            if (rule.kind != RuleKind::hyper) continue;
            for (boost::sregex_iterator it(masked.begin(), masked.end(), rule.compiled), end; it != end; ++it) {
                const auto vb = static_cast<std::size_t>(it->position("value"));
                const auto ve = vb + static_cast<std::size_t>(it->length("value"));
                const Span span{sent.begin + vb, sent.begin + ve};
                switch (rule.value_kind) {
                    case ValueKind::number: emit_number(rule.name, rule.unit, span); break;
                    case ValueKind::number_list: {
                        const std::string sub = masked.substr(vb, ve - vb);
                        for (boost::sregex_iterator n(sub.begin(), sub.end(), number_re(rule.unit)), e2; n != e2; ++n) {
                            const auto nb = span.begin + static_cast<std::size_t>(n->position());
                            emit_number(rule.name, rule.unit, {nb, nb + static_cast<std::size_t>(n->length())});
                        }
                        break;
                    }
                    case ValueKind::count: {
                        if (part_of_range(text, span)) break;
                        const std::string_view surface = slice(text, span);
                        if (const auto c = parse_count(surface))
                            facts.push_back({HyperparamName::parse(rule.name), static_cast<double>(*c), std::nullopt, span,
                                             std::string(surface)});
                        break;
                    }
                    case ValueKind::text: {
                        const std::string_view surface = slice(text, span);
                        if (!surface.empty())
                            facts.push_back({HyperparamName::parse(rule.name), std::string(surface), std::nullopt, span,
                                             std::string(surface)});
                        break;
                    }
                }
            }
        }
    }
    return dedup_hyperparams(std::move(facts));
}

std::vector<ResultFact> Extractor::extract_results(std::string_view text, const ExtractOptions& opts) const {
    const std::string_view body = text.substr(0, std::min(text.size(), find_reference_section(text)));
    std::vector<ResultFact> facts;

    for (const Span sent : split_sentences(body)) {
        const std::string_view sentence = slice(body, sent);
        const std::string masked = mask(sentence);
        const auto emit = [&](const std::string& metric, UnitMode unit, std::size_t vb, std::size_t ve) {
            const Span span{sent.begin + vb, sent.begin + ve};
            if (part_of_range(text, span)) return;
            const std::string_view surface = slice(text, span);
            const auto parsed = parse_number(surface, unit);
            if (!parsed) return;
            ResultFact f;
            f.metric = MetricName::parse(metric);
            f.value = parsed->value;
            f.dataset = nearest_dataset(gazetteer_, sentence, {vb, ve});
            f.split = nearest_split(sentence, {vb, ve});
            f.span = span;
            f.surface = std::string(surface);
            facts.push_back(std::move(f));
        };
        const auto run = [&](const std::string& metric, UnitMode unit, const regex& re) {
            for (boost::sregex_iterator it(masked.begin(), masked.end(), re), end; it != end; ++it) {
                const auto vb = static_cast<std::size_t>(it->position("value"));
                emit(metric, unit, vb, vb + static_cast<std::size_t>(it->length("value")));
            }
        };
        if (opts.rule_patterns) {
            for (const Rule& rule : rules_)
                if (rule.kind == RuleKind::result) run(rule.name, rule.unit, rule.compiled);
        } else {
            for (const auto& g : generic_results()) run(g.name, UnitMode::plain, g.re);
        }
    }

    std::stable_sort(facts.begin(), facts.end(), [](const auto& a, const auto& b) { return a.span < b.span; });
    std::vector<ResultFact> out;
    for (auto& f : facts) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const ResultFact& g) {
            return g.metric == f.metric && g.value == f.value && g.span.overlaps(f.span);
        });
        if (!dup) out.push_back(std::move(f));
    }
    return out;
}

std::vector<CitationLink> Extractor::extract_citations(std::string_view text) const {
    const std::size_t ref_start = find_reference_section(text);
    const std::string_view body = text.substr(0, std::min(text.size(), ref_start));
    std::vector<Reference> refs;
    if (ref_start != std::string_view::npos) refs = parse_references(text.substr(ref_start));

    std::map<int, std::string> by_number;
    std::set<std::string> keys;
    for (const auto& r : refs) {
        if (r.number) by_number.emplace(*r.number, r.key);
        keys.insert(r.key);
    }
    const auto resolve_author_year = [&](const std::string& surname, const std::string& year) -> std::optional<std::string> {
        if (surname.empty()) return std::nullopt;
        const std::string key = surname + year;
        if (keys.count(key)) return key;
        return std::nullopt;
    };
    const auto resolve_cite_key = [&](const std::string& k) -> std::optional<std::string> {
        if (keys.count(k)) return k;
        const std::string lower = to_lower(k);
        for (const auto& key : keys)
            if (lower.rfind(key, 0) == 0) return key;
        return std::nullopt;
    };

    const auto sentences = split_sentences(body);
    const auto statement_of = [&](std::size_t pos) {
        for (const Span s : sentences)
            if (s.begin <= pos && pos < s.end) return s;
        return Span{pos, pos};
    };

    std::vector<CitationLink> links;
    const auto add = [&](Span span, std::optional<std::string> key) {
        links.push_back({std::string(slice(text, span)), std::move(key), span, statement_of(span.begin)});
    };

    const std::string b(body);
    static const regex numeric(R"(\[(\d+(?:\s*(?:,|-|\xE2\x80\x93)\s*\d+)*)\])");
    for (boost::sregex_iterator it(b.begin(), b.end(), numeric), end; it != end; ++it) {
        const auto pos = static_cast<std::size_t>(it->position());
        const Span span{pos, pos + static_cast<std::size_t>(it->length())};
        for (int n : expand_numbers(it->str(1))) {
            auto f = by_number.find(n);
            add(span, f == by_number.end() ? std::nullopt : std::optional<std::string>(f->second));
        }
    }

    static const regex grouped(R"([\(\[]([^()\[\]]*?\b(?:19|20)\d\d[a-z]?)[\)\]])");
    static const regex part_re(
        R"(^\s*(?:(?:see|e\.g\.|cf\.|i\.e\.)[,]?\s+)?((?:(?:van|von|der|den|de|du|da|di|le|la)\s+)*[A-Z][^;()\d]*?),?\s+((?:19|20)\d\d)([a-z]?)\s*$)");
    for (boost::sregex_iterator it(b.begin(), b.end(), grouped), end; it != end; ++it) {
        const std::string inner = it->str(1);
        const auto inner_pos = static_cast<std::size_t>(it->position(1));
        std::size_t start = 0;
        while (start <= inner.size()) {
            std::size_t stop = inner.find(';', start);
            if (stop == std::string::npos) stop = inner.size();
            const std::string part = inner.substr(start, stop - start);
            boost::smatch m;
            if (boost::regex_match(part, m, part_re)) {
                const Span span = trimmed(text, inner_pos + start, inner_pos + stop);
                add(span, resolve_author_year(marker_surname(m.str(1)), m.str(2) + m.str(3)));
            }
            start = stop + 1;
        }
    }

    static const regex narrative(
        R"(\b([A-Z][\w'-]+(?:\s+et\s+al\.|\s+(?:and|&)\s+[A-Z][\w'-]+)?)\s*\(((?:19|20)\d\d)([a-z]?)\))");
    for (boost::sregex_iterator it(b.begin(), b.end(), narrative), end; it != end; ++it) {
        const auto pos = static_cast<std::size_t>(it->position());
        add({pos, pos + static_cast<std::size_t>(it->length())},
            resolve_author_year(marker_surname(it->str(1)), it->str(2) + it->str(3)));
    }

    static const regex latex(R"(\\cite[a-z]*\*?(?:\[[^\]]*\])*\{([^}]*)\})");
    for (boost::sregex_iterator it(b.begin(), b.end(), latex), end; it != end; ++it) {
        const auto pos = static_cast<std::size_t>(it->position());
        const Span span{pos, pos + static_cast<std::size_t>(it->length())};
        for (const auto& k : split(it->str(1), ',')) {
            const std::string key = trim(k);
            if (!key.empty()) add(span, resolve_cite_key(key));
        }
    }

    std::stable_sort(links.begin(), links.end(), [](const auto& x, const auto& y) { return x.span < y.span; });
    std::vector<CitationLink> out;
    for (auto& l : links) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const CitationLink& o) {
            return o.span == l.span && o.resolved_key == l.resolved_key;
        });
        if (!dup) out.push_back(std::move(l));
    }
    return out;
}

Metadata Extractor::extract_metadata(std::string_view text, const PaperRecord* record) const {
    Metadata md;
    const auto lines = split(text.substr(0, std::min<std::size_t>(text.size(), 4000)), '\n');
    std::size_t i = 0;
    for (; i < lines.size(); ++i) {
        const std::string t = trim(lines[i]);
        if (t.empty() || t.size() > 250 || is_abstract_line(t)) continue;
        if (std::any_of(t.begin(), t.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); })) {
            md.title = t;
            break;
        }
    }

    // Header: lines between the title and the abstract heading.
    std::size_t abstract_line = lines.size();
    for (std::size_t j = i + 1; j < lines.size() && j < i + 12; ++j) {
        const std::string t = trim(lines[j]);
        if (t.empty()) continue;
        if (is_abstract_line(t)) {
            abstract_line = j;
            break;
        }
        boost::smatch m;
        const bool venue_line = boost::regex_search(t, m, venue_re());
        if (venue_line && !md.venue) md.venue = m.str(1);
        if (!md.year && boost::regex_search(t, m, year_re())) md.year = std::stoi(m.str(1));
        if (md.authors.empty() && !venue_line && !boost::regex_search(t, year_re()) && t.back() != '.' &&
            split(t, ' ').size() <= 30) {
            std::string names = t;
            for (std::size_t p; (p = names.find(" and ")) != std::string::npos;) names.replace(p, 5, ",");
            for (const auto& n : split(names, ',')) {
                std::string a = trim(n);
                while (!a.empty() && (is_digit(a.back()) || a.back() == '*')) a.pop_back();
                if (!a.empty()) md.authors.push_back(a);
            }
        }
    }

    if (abstract_line < lines.size()) {
        std::string abs = trim(trim(lines[abstract_line]).substr(8));
        while (!abs.empty() && (abs[0] == ':' || abs[0] == '.' || abs[0] == ' ')) abs.erase(0, 1);
        for (std::size_t j = abstract_line + 1; j < lines.size(); ++j) {
            const std::string t = trim(lines[j]);
            if (t.empty()) {
                if (!abs.empty()) break;
                continue;
            }
            abs += abs.empty() ? t : " " + t;
        }
        if (!abs.empty()) md.abstract = abs;
    }

    if (record) {
        if (!record->title.empty()) md.title = record->title;
        if (!record->authors.empty()) md.authors = record->authors;
        if (record->year > 0) md.year = record->year;
        if (record->venue) md.venue = record->venue;
        if (record->abstract && !record->abstract->empty()) md.abstract = record->abstract;
    }
    return md;
}

FactBundle Extractor::extract(std::string_view text, const PaperRecord* record, const ExtractOptions& opts) const {
    FactBundle b;
    b.metadata = extract_metadata(text, record);
    b.hyperparams = extract_hyperparams(text, opts);
    b.results = extract_results(text, opts);
    b.citations = extract_citations(text);
    if (b.metadata.title.empty()) b.warnings.push_back("metadata: no title found");
    const auto unresolved = std::count_if(b.citations.begin(), b.citations.end(),
                                          [](const CitationLink& c) { return !c.resolved_key; });
    if (unresolved > 0) b.warnings.push_back("citations: " + std::to_string(unresolved) + " marker(s) unresolved");
    return b;
}

}  // namespace litsynth
