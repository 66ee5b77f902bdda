#include <doctest.h>

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "litsynth/parse.hpp"
#include "litsynth/pdf.hpp"
#include "litsynth/text.hpp"
#include "litsynth/worker_pool.hpp"
#include "support.hpp"

using namespace litsynth;

namespace {

std::vector<PaperRecord> synthetic_records(std::size_t n) {
    std::vector<PaperRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        PaperRecord r;
        // Reverse order so sorting is observable.
        r.local_id = "doc" + std::to_string(1000 + n - i);
        r.canonical_id = derive_canonical_id(r);
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST_SUITE("parse") {
    TEST_CASE("two-page PDF keeps the sentinel sentence") {
        const auto r = pdf_to_text(testing::fixtures() / "parse" / "two-page.pdf");
        CHECK(r.page_count == 2);
        CHECK(r.text.find("Sentinel: the quick autoregressive fox predicts the lazy dog.") != std::string::npos);
        CHECK(r.text.find("A Two Page Test Document") < r.text.find("Sentinel"));
        CHECK(r.ok());
    }

    TEST_CASE("the reportlab paper in the realistic corpus parses") {
        const auto r = pdf_to_text(testing::fixtures() / "realistic" / "lstm-medium.pdf");
        CHECK(r.text.find("test perplexity of 78.4 on Penn Treebank") != std::string::npos);
    }

    TEST_CASE("zero-byte and corrupt files are unparseable, not fatal") {
        testing::TempDir dir("parse");
        write_file_atomic(dir / "empty.pdf", "");
        write_file_atomic(dir / "junk.pdf", "this is not a pdf at all");
        write_file_atomic(dir / "empty.txt", "");
        for (const char* name : {"empty.pdf", "junk.pdf", "empty.txt"}) {
            CAPTURE(name);
            const auto r = pdf_to_text(dir / name);
            CHECK(r.text.empty());
            CHECK(std::find(r.extraction_warnings.begin(), r.extraction_warnings.end(), kUnparseable) !=
                  r.extraction_warnings.end());
        }
        const auto missing = pdf_to_text(dir / "nope.pdf");
        CHECK(missing.text.empty());
        CHECK_FALSE(missing.extraction_warnings.empty());
    }

    TEST_CASE("plain text passes through unchanged") {
        testing::TempDir dir("parse");
        const std::string body = "Title line\n\nA learning rate of 0.001 was used.\nSecond line.\n";
        write_file_atomic(dir / "a.txt", body);
        const auto r = pdf_to_text(dir / "a.txt");
        CHECK(r.text == body);
        CHECK(r.extraction_warnings.empty());
    }

    TEST_CASE("normalization: ligatures, hyphenation, bad bytes") {
        std::vector<std::string> warnings;
        const std::string out =
            normalize_document_text("ef\xEF\xAC\x81" "cient auto-\nregressive \xFF model\x07", warnings);
        CHECK(out == "efficient autoregressive \xEF\xBF\xBD model");
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].rfind("invalid-utf8", 0) == 0);
    }

    TEST_CASE("pdf writer and reader round trip, compressed and not") {
        const std::vector<std::vector<std::string>> pages{{"First page (with parens)", "second line"},
                                                          {"Back\\slash on page two"}};
        for (bool compress : {true, false}) {
            const auto t = pdf::extract_text(pdf::write_text_pdf(pages, compress));
            CHECK(t.page_count == 2);
            CHECK(t.text.find("First page (with parens)") != std::string::npos);
            CHECK(t.text.find("Back\\slash on page two") != std::string::npos);
        }
        CHECK(pdf::inflate(pdf::deflate("hello hello hello")) == "hello hello hello");
        CHECK_THROWS_AS(pdf::extract_text("plain words"), pdf::PdfError);
    }

    TEST_CASE("backend registry is pluggable") {
        struct Upper final : TextBackend {
            std::string extract(const std::string& bytes, int& pages, std::vector<std::string>&) const override {
                pages = 1;
                std::string s = bytes;
                for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                return s;
            }
        };
        testing::TempDir dir("parse");
        write_file_atomic(dir / "a.shout", "quiet words");
        BackendRegistry reg;
        CHECK(reg.find(dir / "a.shout") == nullptr);
        reg.add(".shout", std::make_shared<Upper>());
        CHECK(pdf_to_text(dir / "a.shout", reg).text == "QUIET WORDS");
    }

    TEST_CASE("parallel_map output is independent of worker count") {
        const auto records = synthetic_records(100);
        const auto task = [](const PaperRecord& r) {
            std::this_thread::sleep_for(std::chrono::microseconds(fnv1a64(r.canonical_id) % 200));
            return r.canonical_id + ":" + std::to_string(fnv1a64(r.canonical_id) % 97);
        };
        const auto one = parallel_map(records, 1, task);
        const auto eight = parallel_map(records, 8, task);
        CHECK(one.outputs == eight.outputs);
        CHECK(one.outputs.size() == 100);
        CHECK(std::is_sorted(one.outputs.begin(), one.outputs.end()));
    }

    TEST_CASE("a throwing task is isolated") {
        const auto records = synthetic_records(100);
        const std::string bad = records[37].canonical_id;
        std::atomic<int> runs{0};
        const auto res = parallel_map(records, 8, [&](const PaperRecord& r) {
            ++runs;
            if (r.canonical_id == bad) throw std::runtime_error("boom");
            return r.canonical_id;
        });
        CHECK(runs == 100);
        CHECK(res.outputs.size() == 99);
        REQUIRE(res.failures.size() == 1);
        CHECK(res.failures[0].canonical_id == bad);
        CHECK(res.failures[0].message == "boom");
        CHECK(res.outputs.size() + res.failures.size() == records.size());
    }

    TEST_CASE("worker count must be positive") {
        CHECK_THROWS_AS(parallel_map(synthetic_records(2), 0, [](const PaperRecord&) { return 0; }),
                        std::invalid_argument);
        CHECK(parallel_map(std::vector<PaperRecord>{}, 4, [](const PaperRecord&) { return 0; }).outputs.empty());
    }
}
