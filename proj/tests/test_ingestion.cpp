#include <doctest.h>

#include <set>

#include "litsynth/ingestion.hpp"
#include "litsynth/pdf.hpp"
#include "litsynth/text.hpp"
#include "support.hpp"

using namespace litsynth;
namespace fs = std::filesystem;

namespace {

SourceConfig fast_config(Source s) {
    SourceConfig cfg = default_source_config(s);
    cfg.rate.interval = std::chrono::milliseconds(0);
    cfg.retry.base_delay = std::chrono::milliseconds(0);
    return cfg;
}

ReplayHttpClient recorded() { return ReplayHttpClient(testing::fixtures() / "api" / "recordings.jsonl"); }

class FlakyClient final : public HttpClient {
public:
    explicit FlakyClient(int failures, int status = 503) : failures_(failures), status_(status) {}
    HttpResponse get(const std::string&, const HttpHeaders&) override {
        ++calls;
        if (failures_-- > 0) return {status_, "busy"};
        return {200, "ok"};
    }
    HttpResponse post(const std::string&, const std::string&, const std::string&, const HttpHeaders&) override {
        throw HttpError("unused");
    }
    int calls = 0;

private:
    int failures_;
    int status_;
};

PaperRecord rec(std::string title, Source src = Source::arxiv) {
    PaperRecord r;
    r.title = std::move(title);
    r.source = src;
    r.year = 2020;
    return r;
}

}  // namespace

TEST_SUITE("ingestion") {
    TEST_CASE("status transitions follow the lifecycle") {
        CHECK(is_valid_transition(PaperStatus::retrieved, PaperStatus::parsed));
        CHECK(is_valid_transition(PaperStatus::retrieved, PaperStatus::parse_failed));
        CHECK(is_valid_transition(PaperStatus::parsed, PaperStatus::extracted));
        CHECK(is_valid_transition(PaperStatus::parsed, PaperStatus::filtered_out));
        CHECK_FALSE(is_valid_transition(PaperStatus::retrieved, PaperStatus::extracted));
        CHECK_FALSE(is_valid_transition(PaperStatus::parse_failed, PaperStatus::parsed));
        CHECK_FALSE(is_valid_transition(PaperStatus::extracted, PaperStatus::parsed));
        PaperRecord r = rec("x");
        CHECK_THROWS_AS(r.advance(PaperStatus::extracted), InvalidTransition);
        r.advance(PaperStatus::parsed);
        CHECK(r.status == PaperStatus::parsed);
    }

    TEST_CASE("canonical id precedence") {
        PaperRecord r = rec("Some Title");
        CHECK(derive_canonical_id(r) == title_hash_id("Some Title"));
        r.local_id = "f";
        CHECK(derive_canonical_id(r) == "local:f");
        r.s2_id = "abc";
        CHECK(derive_canonical_id(r) == "s2:abc");
        r.arxiv_id = "1708.02182";
        CHECK(derive_canonical_id(r) == "arxiv:1708.02182");
        r.doi = "10.1/ABC";
        CHECK(derive_canonical_id(r) == "doi:10.1/abc");
        CHECK(normalize_title("Attention Is All You Need!") == "attentionisallyouneed");
        CHECK(cache_file_stem("doi:10.1/abc") == "doi_10.1_abc");
    }

    TEST_CASE("record json round trip") {
        PaperRecord r = rec("T");
        r.authors = {"A", "B"};
        r.venue = "V";
        r.doi = "10.1/x";
        r.review_flags = {"download_failed: HTTP 404"};
        r.pdf_path = "x.pdf";
        r.canonical_id = derive_canonical_id(r);
        const PaperRecord back = nlohmann::json(r).get<PaperRecord>();
        CHECK(back == r);
    }

    TEST_CASE("arXiv search against recordings") {
        auto client = recorded();
        SearchLog log;
        const auto out = search_api(client, "autoregressive generative models", {2016, 2024}, Source::arxiv,
                                    fast_config(Source::arxiv), &log);
        CHECK(out.size() == 9);
        CHECK(log.skipped.size() == 1);
        for (const auto& r : out) {
            CHECK(r.status == PaperStatus::retrieved);
            CHECK(r.source == Source::arxiv);
            CHECK(r.year >= 2016);
            CHECK(r.year <= 2024);
            CHECK_FALSE(r.title.empty());
        }
        const auto flow = std::find_if(out.begin(), out.end(), [](const PaperRecord& r) {
            return r.title == "Autoregressive Flows for Density Estimation";
        });
        REQUIRE(flow != out.end());
        CHECK(flow->canonical_id == "doi:10.5555/arflow.2017");
        CHECK(flow->arxiv_id == "1703.00417");
    }

    TEST_CASE("one malformed entry among ten is skipped and logged") {
        auto client = recorded();
        const auto body = client.get(arxiv_query_url(fast_config(Source::arxiv), "autoregressive generative models",
                                                     {2016, 2024}, 0))
                              .body;
        std::vector<PaperRecord> out;
        SearchLog log;
        CHECK(parse_arxiv_feed(body, out, &log) == 10);
        CHECK(out.size() == 9);
        CHECK(log.skipped.size() == 1);

        const auto s2 = client.get(semantic_scholar_query_url(fast_config(Source::semantic_scholar),
                                                              "autoregressive generative models", {2016, 2024}, 0))
                            .body;
        std::vector<PaperRecord> s2_out;
        SearchLog s2_log;
        CHECK(parse_semantic_scholar_page(s2, s2_out, &s2_log, nullptr) == 10);
        CHECK(s2_out.size() == 9);
        CHECK(s2_log.skipped.size() == 1);
    }

    TEST_CASE("Semantic Scholar results outside the year range are dropped") {
        auto client = recorded();
        const auto out = search_api(client, "autoregressive generative models", {2016, 2024},
                                    Source::semantic_scholar, fast_config(Source::semantic_scholar));
        CHECK(out.size() == 8);
        for (const auto& r : out) CHECK(YearRange{2016, 2024}.contains(r.year));
    }

    TEST_CASE("query matching nothing gives an empty list") {
        auto client = recorded();
        for (Source s : {Source::arxiv, Source::semantic_scholar})
            CHECK(search_api(client, "generative models of imaginary turtles", {2016, 2024}, s, fast_config(s)).empty());
    }

    TEST_CASE("unreachable source raises SourceError") {
        ReplayHttpClient empty;
        auto cfg = fast_config(Source::arxiv);
        CHECK_THROWS_AS(search_api(empty, "anything", {2016, 2024}, Source::arxiv, cfg), SourceError);
    }

    TEST_CASE("retry policy is bounded") {
        RetryPolicy retry{3, std::chrono::milliseconds(0)};
        FlakyClient twice(2);
        CHECK(get_with_retry(twice, "u", retry).status == 200);
        CHECK(twice.calls == 3);
        FlakyClient always(10);
        CHECK_THROWS_AS(get_with_retry(always, "u", retry), HttpError);
        CHECK(always.calls == 3);
        FlakyClient not_found(10, 404);
        CHECK(get_with_retry(not_found, "u", retry).status == 404);
        CHECK(not_found.calls == 1);
    }

    TEST_CASE("token bucket spaces requests") {
        TokenBucket bucket({std::chrono::milliseconds(20), 1});
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < 4; ++i) bucket.acquire();
        CHECK(std::chrono::steady_clock::now() - t0 >= std::chrono::milliseconds(55));
    }

    TEST_CASE("deduplicate merges identities and is a projection") {
        PaperRecord a = rec("Autoregressive Flows for Density Estimation");
        a.doi = "10.5555/arflow.2017";
        a.canonical_id = derive_canonical_id(a);
        PaperRecord b = rec("Autoregressive flows for density estimation", Source::semantic_scholar);
        b.doi = "10.5555/ARFLOW.2017";
        b.venue = "ICML";
        b.abstract = "text";
        b.canonical_id = derive_canonical_id(b);
        PaperRecord c = rec("Pixel Models: Revisited");
        c.canonical_id = derive_canonical_id(c);
        PaperRecord d = rec("pixel models revisited", Source::semantic_scholar);
        d.canonical_id = derive_canonical_id(d);
        PaperRecord e = rec("Something Else");
        e.canonical_id = derive_canonical_id(e);

        const auto once = deduplicate({e, a, c, b, d});
        CHECK(once.size() == 3);
        CHECK(std::is_sorted(once.begin(), once.end(),
                             [](const auto& x, const auto& y) { return x.canonical_id < y.canonical_id; }));
        const auto merged = std::find_if(once.begin(), once.end(), [](const auto& r) { return r.doi.has_value(); });
        REQUIRE(merged != once.end());
        CHECK(merged->venue == "ICML");
        CHECK(deduplicate(once) == once);

        const auto distinct = deduplicate({e, c});
        CHECK(distinct.size() == 2);
    }

    TEST_CASE("recorded sources deduplicate across arXiv and Semantic Scholar") {
        auto client = recorded();
        auto all = search_api(client, "autoregressive generative models", {2016, 2024}, Source::arxiv,
                              fast_config(Source::arxiv));
        const auto s2 = search_api(client, "autoregressive generative models", {2016, 2024},
                                   Source::semantic_scholar, fast_config(Source::semantic_scholar));
        all.insert(all.end(), s2.begin(), s2.end());
        const auto merged = deduplicate(all);
        CHECK(merged.size() == all.size() - 1);
        std::set<std::string> ids;
        for (const auto& r : merged) CHECK(ids.insert(r.canonical_id).second);
    }

    TEST_CASE("fetch_document downloads, caches and flags dead links") {
        testing::TempDir dir("fetch");
        auto client = recorded();
        PaperRecord r = rec("Autoregressive Flows for Density Estimation");
        r.doi = "10.5555/arflow.2017";
        r.document_url = "https://example.org/papers/arflow.pdf";
        r.canonical_id = derive_canonical_id(r);

        const auto fetched = fetch_document(r, dir.path(), client);
        REQUIRE(fetched.pdf_path);
        CHECK(fs::exists(*fetched.pdf_path));
        CHECK(fetched.review_flags.empty());
        const auto calls = client.calls();
        const auto again = fetch_document(r, dir.path(), client);
        CHECK(again.pdf_path == fetched.pdf_path);
        CHECK(client.calls() == calls);
        CHECK(pdf::extract_text(read_file(*fetched.pdf_path)).text.find("learning rate of 0.0001") !=
              std::string::npos);

        PaperRecord dead = rec("Autoregressive Language Models at Small Scale");
        dead.doi = "10.5555/small.2020";
        dead.document_url = "https://example.org/papers/missing.pdf";
        dead.canonical_id = derive_canonical_id(dead);
        const auto flagged = fetch_document(dead, dir.path(), client);
        CHECK(flagged.status == PaperStatus::retrieved);
        CHECK_FALSE(flagged.pdf_path);
        REQUIRE(flagged.review_flags.size() == 1);
        CHECK(flagged.review_flags[0].find("404") != std::string::npos);
    }

    TEST_CASE("manifest round trip is idempotent") {
        testing::TempDir dir("manifest");
        PaperRecord a = rec("B paper");
        a.local_id = "b";
        a.pdf_path = dir / "b.txt";
        a.canonical_id = derive_canonical_id(a);
        PaperRecord b = rec("A paper");
        b.local_id = "a";
        b.canonical_id = derive_canonical_id(b);
        write_file_atomic(dir / "b.txt", "B paper\n");
        write_manifest(dir.path(), {a, b});
        const std::string first = read_file(dir / kManifestName);
        const auto back = read_manifest(dir.path());
        REQUIRE(back.size() == 2);
        CHECK(back[0].canonical_id == "local:a");
        CHECK(back[1].pdf_path == dir / "b.txt");
        write_manifest(dir.path(), back);
        CHECK(read_file(dir / kManifestName) == first);
    }

    TEST_CASE("local directory scan") {
        testing::TempDir dir("scan");
        write_file_atomic(dir / "one.txt", "\n  First Title\nbody\n");
        write_file_atomic(dir / "two.md", "Second\n");
        write_file_atomic(dir / "skip.bin", "x");
        const auto out = scan_local_directory(dir.path());
        REQUIRE(out.size() == 2);
        CHECK(out[0].canonical_id == "local:one");
        CHECK(out[0].title == "First Title");
        CHECK(out[0].source == Source::local_file);
        CHECK(scan_local_directory(dir / "missing").empty());
    }

    TEST_CASE("URL helpers") {
        CHECK(url_encode("a b:\"c\"") == "a%20b%3A%22c%22");
        const auto parts = split_url("https://example.org:8443/x/y?q=1");
        CHECK(parts.origin == "https://example.org:8443");
        CHECK(parts.path == "/x/y?q=1");
        CHECK(split_url("http://h").path == "/");
    }
}
