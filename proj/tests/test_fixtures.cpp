#include <doctest.h>

#include "litsynth/data_dir.hpp"
#include "litsynth/extract.hpp"
#include "litsynth/fixtures.hpp"
#include "litsynth/ingestion.hpp"
#include "litsynth/parse.hpp"
#include "support.hpp"

using namespace litsynth;

namespace {

std::string dir_bytes(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += f.filename().string() + "\n" + read_file(f) + "\n";
    return all;
}

KnowledgeBase extract_corpus(const GeneratedCorpus& corpus) {
    const Extractor x = Extractor::load(default_data_dir());
    KnowledgeBase kb;
    for (auto r : read_manifest(corpus.dir)) {
        const ParseResult p = pdf_to_text(*r.pdf_path);
        REQUIRE(p.ok());
        r.status = PaperStatus::extracted;
        kb.append(r, x.extract(p.text, &r));
    }
    return kb;
}

}  // namespace

TEST_SUITE("fixtures") {
    TEST_CASE("same seed gives identical bytes") {
        testing::TempDir a("fx-a"), b("fx-b"), c("fx-c");
        generate_corpus(random_specs(8, 42), 42, a.path());
        generate_corpus(random_specs(8, 42), 42, b.path());
        generate_corpus(random_specs(8, 43), 43, c.path());
        CHECK(dir_bytes(a.path()) == dir_bytes(b.path()));
        CHECK(dir_bytes(a.path()) != dir_bytes(c.path()));
    }

    TEST_CASE("invalid spec lists") {
        testing::TempDir d("fx-bad");
        auto specs = random_specs(2, 1);
        specs[1].canonical_id = specs[0].canonical_id;
        CHECK_THROWS_AS(generate_corpus(specs, 1, d.path()), FixtureError);
        CHECK_THROWS_AS(generate_corpus({}, 1, d.path()), FixtureError);
    }

    TEST_CASE("layout matches the ingestion cache") {
        testing::TempDir d("fx-layout");
        const auto corpus = generate_corpus(random_specs(5, 7), 7, d.path(), CorpusFormat::pdf);
        const auto manifest = read_manifest(d.path());
        REQUIRE(manifest.size() == 5);
        for (const auto& r : manifest) {
            CHECK(r.status == PaperStatus::retrieved);
            CHECK(r.source == Source::local_file);
            REQUIRE(r.pdf_path);
            CHECK(std::filesystem::exists(*r.pdf_path));
            CHECK(r.pdf_path->extension() == ".pdf");
        }
        CHECK(load_gold(d / "gold.jsonl") == corpus.gold);
        CHECK(corpus.gold.size() == 5 * 4);
    }

    TEST_CASE("noise-free corpus is recovered exactly, text and PDF") {
        for (const auto format : {CorpusFormat::text, CorpusFormat::pdf}) {
            testing::TempDir d("fx-self");
            const auto corpus = generate_corpus(random_specs(30, 42), 42, d.path(), format);
            const EvalReport r = evaluate_corpus(corpus.gold, extract_corpus(corpus));
            for (const auto& [t, prf] : r.tasks) CHECK_MESSAGE(prf.f1 == 1.0, to_string(t));
        }
    }

    TEST_CASE("distractor sentences do not add facts") {
        testing::TempDir d("fx-noise");
        const auto corpus = generate_corpus(random_specs(20, 5, 600, {4}), 5, d.path());
        const EvalReport r = evaluate_corpus(corpus.gold, extract_corpus(corpus));
        CHECK(r.pooled.f1 == 1.0);
    }

    TEST_CASE("off-topic specs carry no facts") {
        SyntheticPaperSpec s;
        s.canonical_id = "offtopic";
        s.relevant = false;
        for (const auto& g : planted_gold(s)) CHECK(g.items.empty());
        CHECK_FALSE(render_paper(s, 1).empty());
    }

    TEST_CASE("400 documents and a balanced relevance set") {
        const auto specs = random_specs(400, 42);
        CHECK(specs.size() == 400);
        CHECK(specs.back().canonical_id == "synth-0400");
        const auto set = relevance_training_set(50, 42);
        CHECK(set.size() == 100);
        CHECK(std::count_if(set.begin(), set.end(), [](const auto& e) { return e.second; }) == 50);
    }
}
