#include "litsynth/summarise.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include <boost/regex.hpp>
#include <nlohmann/json.hpp>

#include "litsynth/extract.hpp"

namespace litsynth {

namespace {

std::size_t word_count(std::string_view s) {
    std::size_t n = 0;
    bool in = false;
    for (char c : s) {
        const bool space = c == ' ' || c == '\n' || c == '\t';
        if (!space && !in) ++n;
        in = !space;
    }
    return n;
}

std::string one_line(std::string_view s) {
    std::string out(s);
    std::replace(out.begin(), out.end(), '\n', ' ');
    return out;
}

}  // namespace

HttpSummaryBackend::HttpSummaryBackend(std::shared_ptr<HttpClient> client, std::string url, std::string token_env)
    : client_(std::move(client)), url_(std::move(url)), token_env_(std::move(token_env)) {}

std::optional<std::string> HttpSummaryBackend::generate(const std::string& prompt, std::string& error) {
    HttpHeaders headers;
    if (const char* token = std::getenv(token_env_.c_str()); token && *token)
        headers["Authorization"] = std::string("Bearer ") + token;
    try {
        const auto resp = client_->post(url_, nlohmann::json{{"prompt", prompt}}.dump(), "application/json", headers);
        if (resp.status != 200) {
            error = "summariser backend returned HTTP " + std::to_string(resp.status);
            return std::nullopt;
        }
        const auto j = nlohmann::json::parse(resp.body);
        if (!j.contains("text") || !j["text"].is_string()) {
            error = "summariser backend reply has no \"text\" field";
            return std::nullopt;
        }
        return j["text"].get<std::string>();
    } catch (const std::exception& e) {
        error = std::string("summariser backend failed: ") + e.what();
        return std::nullopt;
    }
}

namespace {

// Sentence splitting runs across line breaks, so a sentence can start with
// heading lines ("Experimental Setup\nWe train..."). Short lines without
// closing punctuation are treated as headings and dropped from the front.
Span skip_heading_lines(std::string_view text, Span s) {
    for (;;) {
        const std::string_view sv = slice(text, s);
        const auto nl = sv.find('\n');
        if (nl == std::string_view::npos) return s;
        const std::string line = trim(sv.substr(0, nl));
        const char last = line.empty() ? '\0' : line.back();
        if (!line.empty() && (word_count(line) > 8 || last == '.' || last == '!' || last == '?' || last == ':'))
            return s;
        s.begin += nl + 1;
        while (s.begin < s.end && std::isspace(static_cast<unsigned char>(text[s.begin]))) ++s.begin;
    }
}

}  // namespace

std::vector<SummarySentence> retrieve_sentences(const std::vector<ClusterDocument>& docs, const SparseVector& centroid,
                                                const TfidfIndex& index, const SummaryOptions& opts) {
    std::vector<SummarySentence> out;
    for (const auto& doc : docs) {
        const std::string_view body =
            std::string_view(doc.text).substr(0, std::min(doc.text.size(), find_reference_section(doc.text)));
        struct Scored {
            Span span;
            double score;
        };
        std::vector<Scored> candidates;
        for (Span s : split_sentences(body)) {
            s = skip_heading_lines(body, s);
            const std::string_view sentence = slice(body, s);
            if (word_count(sentence) < opts.min_words) continue;
            const char last = sentence.back();
            if (last != '.' && last != '!' && last != '?' && last != '"' && last != ')') continue;
            candidates.push_back({s, dot(index.transform(sentence), centroid)});
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Scored& a, const Scored& b) { return a.score > b.score; });
        if (candidates.size() > opts.sentences_per_document) candidates.resize(opts.sentences_per_document);
        std::sort(candidates.begin(), candidates.end(), [](const Scored& a, const Scored& b) { return a.span < b.span; });
        for (const auto& c : candidates)
            out.push_back({std::string(slice(body, c.span)), {doc.id}, doc.id, c.span});
    }
    return out;
}

std::optional<std::vector<SummarySentence>> verify_generated(const std::string& output,
                                                             const std::set<std::string>& members, std::string& reason) {
    static const boost::regex marker(R"(\[([^\[\]]+)\])");
    std::vector<SummarySentence> out;
    for (const Span s : split_sentences(output)) {
        const std::string sentence(slice(output, s));
        SummarySentence ss;
        std::string stripped;
        auto last = sentence.cbegin();
        for (boost::sregex_iterator it(sentence.begin(), sentence.end(), marker), end; it != end; ++it) {
            stripped.append(last, (*it)[0].first);
            last = (*it)[0].second;
            for (std::string id : split(it->str(1), ',')) {
                id = trim(id);
                if (id.empty()) continue;
                if (!members.count(id)) {
                    reason = "sentence cites '" + id + "', which is not in the cluster";
                    return std::nullopt;
                }
                if (std::find(ss.citations.begin(), ss.citations.end(), id) == ss.citations.end())
                    ss.citations.push_back(id);
            }
        }
        stripped.append(last, sentence.cend());
        if (ss.citations.empty()) {
            reason = "sentence without citation: " + one_line(sentence);
            return std::nullopt;
        }
        // Drop the space left before a removed trailing marker ("claim [id].").
        std::string text;
        for (std::size_t i = 0; i < stripped.size(); ++i) {
            if (stripped[i] == ' ' && i + 1 < stripped.size() && (stripped[i + 1] == '.' || stripped[i + 1] == ',')) continue;
            text += stripped[i];
        }
        ss.text = trim(text);
        out.push_back(std::move(ss));
    }
    if (out.empty()) {
        reason = "backend returned no sentences";
        return std::nullopt;
    }
    return out;
}

std::string build_prompt(const std::vector<SummarySentence>& retrieved) {
    std::string p =
        "Write a short summary of the research below. Use only the numbered source sentences. End every sentence "
        "with the bracketed id of each source it relies on, for example [id]. Do not cite anything else.\n\n";
    for (std::size_t i = 0; i < retrieved.size(); ++i)
        p += std::to_string(i + 1) + ". " + one_line(retrieved[i].text) + " [" + retrieved[i].citations.front() + "]\n";
    return p;
}

Summary summarise(const std::vector<ClusterDocument>& docs, const SparseVector& centroid, const TfidfIndex& index,
                  SummaryBackend* backend, const SummaryOptions& opts) {
    if (docs.empty()) throw std::invalid_argument("cannot summarise an empty cluster");
    Summary summary;
    summary.sentences = retrieve_sentences(docs, centroid, index, opts);
    if (!backend) return summary;

    std::set<std::string> members;
    for (const auto& d : docs) members.insert(d.id);
    std::string error;
    const auto text = backend->generate(build_prompt(summary.sentences), error);
    if (!text) {
        summary.warnings.push_back(error + "; using extractive summary");
        return summary;
    }
    std::string reason;
    auto verified = verify_generated(*text, members, reason);
    if (!verified) {
        summary.warnings.push_back("generated summary rejected (" + reason + "); using extractive summary");
        return summary;
    }
    summary.sentences = std::move(*verified);
    summary.extractive = false;
    return summary;
}

std::string render_report(const std::string& topic, const std::vector<TopicSection>& sections) {
    std::string out = "# Literature synthesis: " + topic + "\n\n";
    if (sections.empty()) return out + "No papers passed relevance filtering.\n";
    for (const auto& s : sections) {
        out += "## Topic " + std::to_string(s.cluster + 1) + ": " + join(s.labels, ", ") + "\n\n";
        out += "Papers: " + join(s.members, ", ") + "\n\n";
        for (const auto& sent : s.summary.sentences)
            out += "- " + one_line(sent.text) + " [" + join(sent.citations, ", ") + "]\n";
        for (const auto& w : s.summary.warnings) out += "\n> note: " + w + "\n";
        out += "\n";
    }
    return out;
}

}  // namespace litsynth
