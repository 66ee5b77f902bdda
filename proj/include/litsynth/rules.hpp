#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/regex.hpp>

namespace litsynth {

// Rule file line grammar (fields separated by '|', surrounding blanks trimmed):
//
//   kind | name | key | value | unit | window | order
//
//   kind    hyper or result
//   name    canonical hyperparameter / metric name, or a free label
//   key     regular expression for the name phrase, matched case-insensitively
//   value   NUM, NUMLIST, COUNT, or a regular expression for a string value
//   unit    plain  number only
//           scale  accepts %, K/M/B and million/billion suffixes and
//                  normalizes them (40% -> 0.40, 360M -> 360000000)
//           keep   accepts a trailing % but keeps the number as written
//   window  maximum characters between key and value
//   order   after (value follows key) or before (value precedes key)
//
// Blank lines and lines starting with '#' are ignored.

enum class RuleKind { hyper, result };
enum class ValueKind { number, number_list, count, text };
enum class UnitMode { plain, scale, keep };
enum class RuleOrder { after, before };

struct Rule {
    RuleKind kind = RuleKind::hyper;
    std::string name;
    std::string key_pattern;
    std::string value_pattern;  // macro name or regex
    ValueKind value_kind = ValueKind::number;
    UnitMode unit = UnitMode::plain;
    std::size_t window = 24;
    RuleOrder order = RuleOrder::after;
    std::size_t line = 0;
    boost::regex compiled;  // key, gap and value combined; group "value" is the value
};

class RuleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<Rule> parse_rules(std::string_view text);
std::vector<Rule> load_rules(const std::filesystem::path& path);

/// Regex source for one number in any of the accepted notations, with an
/// optional suffix according to `unit`.
std::string number_pattern(UnitMode unit);

struct ParsedNumber {
    double value = 0;
    std::optional<std::string> unit;
};

/// Parses "0.001", "1,024", "2e-4", "2×10^-4", "2\times 10^{-4}", "40%",
/// "360M", "800K", "3 million". With UnitMode::scale suffixes are applied;
/// with keep, a '%' is recorded but the number is left as written.
std::optional<ParsedNumber> parse_number(std::string_view surface, UnitMode unit = UnitMode::scale);

/// Number words "one".."twenty" and digit strings.
std::optional<int> parse_count(std::string_view surface);

struct GazetteerEntry {
    std::string name;
    boost::regex pattern;
};

/// Lines "Canonical Name | regex"; the regex is matched case-insensitively.
std::vector<GazetteerEntry> parse_gazetteer(std::string_view text);
std::vector<GazetteerEntry> load_gazetteer(const std::filesystem::path& path);

}  // namespace litsynth
