#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "litsynth/text.hpp"

using namespace litsynth;

TEST_SUITE("text") {
    TEST_CASE("sanitize_utf8 repairs bytes and strips control characters") {
        std::size_t bad = 0;
        const std::string in = std::string("ok\tgo\r\nnext\x01") + "\xC3\x28" + "end";
        const std::string out = sanitize_utf8(in, &bad);
        CHECK(bad == 1);
        CHECK(out == "ok go\nnext\xEF\xBF\xBD(end");
        CHECK(sanitize_utf8("caf\xC3\xA9") == "caf\xC3\xA9");
    }

    TEST_CASE("ligatures and hyphenated line breaks") {
        CHECK(normalize_ligatures("e\xEF\xAC\x83" "cient \xEF\xAC\x81le") == "efficient file");
        CHECK(join_hyphenated_linebreaks("auto-\nregressive models") == "autoregressive models");
        CHECK(join_hyphenated_linebreaks("state-of-the-art") == "state-of-the-art");
        CHECK(fold_for_matching("Auto-Regressive Decoding") == "autoregressive decoding");
    }

    TEST_CASE("sentence splitting guards abbreviations") {
        const std::string t = "We follow Merity et al. in most choices. Results use e.g. dropout. Next one";
        const auto s = split_sentences(t);
        REQUIRE(s.size() == 3);
        CHECK(slice(t, s[0]) == "We follow Merity et al. in most choices.");
        CHECK(slice(t, s[1]) == "Results use e.g. dropout.");
        CHECK(slice(t, s[2]) == "Next one");
    }

    TEST_CASE("blank lines end sentences") {
        const std::string t = "Abstract\n\nThe model is small";
        const auto s = split_sentences(t);
        REQUIRE(s.size() == 2);
        CHECK(slice(t, s[0]) == "Abstract");
    }

    TEST_CASE("format_number round-trips") {
        CHECK(format_number(30) == "30");
        CHECK(format_number(0.25) == "0.25");
        CHECK(format_number(200000) == "200000");
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-6, 6);
        for (int i = 0; i < 2000; ++i) {
            const double v = std::pow(10.0, u(rng));
            CHECK(std::stod(format_number(v)) == v);
        }
    }

    TEST_CASE("split, join, trim") {
        CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
        CHECK(join({"x", "y"}, ", ") == "x, y");
        CHECK(trim("  x y \n") == "x y");
        CHECK(starts_with_icase("References", "refer"));
        CHECK(tokenize_words("GPT-2, 1.5B params") == std::vector<std::string>{"gpt", "2", "1", "5b", "params"});
    }

    TEST_CASE("fnv1a64 reference values") {
        CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
        CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
        CHECK(hex64(0xabcULL) == "0000000000000abc");
    }
}
