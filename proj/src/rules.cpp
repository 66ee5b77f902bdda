#include "litsynth/rules.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "litsynth/text.hpp"

namespace litsynth {

namespace {

constexpr std::string_view kSep = " | ";

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t pos = line.find(kSep); pos != std::string_view::npos; pos = line.find(kSep, start)) {
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + kSep.size();
    }
    out.push_back(trim(line.substr(start)));
    return out;
}

const std::string kMinus = "(?:-|\xE2\x88\x92|\xE2\x80\x93)";  // - U+2212 U+2013
const std::string kSuperscripts =
    "(?:\xE2\x81\xBB)?(?:\xE2\x81\xB0|\xC2\xB9|\xC2\xB2|\xC2\xB3|\xE2\x81\xB4|\xE2\x81\xB5|\xE2\x81\xB6|"
    "\xE2\x81\xB7|\xE2\x81\xB8|\xE2\x81\xB9)+";
const std::string kTimes = "(?:\xC3\x97|x|\\*|\xC2\xB7|\\\\times|\\\\cdot)";  // × x * · \times \cdot

std::string exponent_tail() {
    return "10\\s*(?:\\^\\s*\\{?\\s*" + kMinus + "?\\s*\\d+\\s*\\}?|" + kSuperscripts + ")";
}

std::string base_number() {
    return "(?:" + exponent_tail() + "|\\d+(?:,\\d{3})*(?:\\.\\d+)?(?:[eE][-+]?\\d+)?(?:\\s*" + kTimes + "\\s*" +
           exponent_tail() + ")?)";
}

std::string value_source(const Rule& r) {
    const std::string num = number_pattern(r.unit);
    if (r.value_pattern == "NUM") return num;
    if (r.value_pattern == "NUMLIST") {
        // A continuation item must end the list, so "1024, 16 heads" stays one item.
        const std::string item =
            num + "(?=\\s*(?:[,;.)\\]]|$|and\\b|or\\b|respectively\\b|units?\\b|dimensions?\\b|for\\b|in\\b|on\\b))";
        return num + "(?:\\s*,\\s*" + item + ")*(?:\\s*,?\\s*(?:and|&)\\s*" + item + ")?";
    }
    if (r.value_pattern == "COUNT")
        return "(?<![\\w.])(?:\\d+(?![.,]?\\d)|(?:one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve|"
               "thirteen|fourteen|fifteen|sixteen|seventeen|eighteen|nineteen|twenty)\\b)";
    return "(?:" + r.value_pattern + ")";
}

void compile(Rule& r) {
    const std::string gap = "[^0-9;]{0," + std::to_string(r.window) + "}?";
    const std::string value = "(?<value>" + value_source(r) + ")";
    std::string src;
    if (r.key_pattern == "-") src = value;
    else if (r.order == RuleOrder::after) src = "(?:" + r.key_pattern + ")" + gap + value;
    else src = value + gap + "(?:" + r.key_pattern + ")";
    try {
        r.compiled = boost::regex(src, boost::regex::perl | boost::regex::icase);
    } catch (const boost::regex_error& e) {
        throw RuleError("rule line " + std::to_string(r.line) + ": bad pattern: " + e.what());
    }
}

double word_count(std::string_view w) {
    static const char* words[] = {"zero",   "one",     "two",      "three",    "four",    "five",    "six",
                                  "seven",  "eight",   "nine",     "ten",      "eleven",  "twelve",  "thirteen",
                                  "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen", "twenty"};
    for (int i = 0; i <= 20; ++i)
        if (w == words[i]) return i;
    return -1;
}

int superscript_digit(std::string_view s, std::size_t& i) {
    static const std::pair<const char*, int> table[] = {
        {"\xE2\x81\xB0", 0}, {"\xC2\xB9", 1},     {"\xC2\xB2", 2},     {"\xC2\xB3", 3},     {"\xE2\x81\xB4", 4},
        {"\xE2\x81\xB5", 5}, {"\xE2\x81\xB6", 6}, {"\xE2\x81\xB7", 7}, {"\xE2\x81\xB8", 8}, {"\xE2\x81\xB9", 9}};
    for (const auto& [bytes, d] : table) {
        const std::string_view b(bytes);
        if (s.substr(i, b.size()) == b) {
            i += b.size();
            return d;
        }
    }
    return -1;
}

bool skip_prefix(std::string_view s, std::size_t& i, std::string_view p) {
    if (s.substr(i, p.size()) == p) {
        i += p.size();
        return true;
    }
    return false;
}

void skip_spaces(std::string_view s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\n' || s[i] == '{' || s[i] == '}')) ++i;
}

bool skip_minus(std::string_view s, std::size_t& i) {
    return skip_prefix(s, i, "-") || skip_prefix(s, i, "\xE2\x88\x92") || skip_prefix(s, i, "\xE2\x80\x93") ||
           skip_prefix(s, i, "\xE2\x81\xBB");
}

// Parses "10^-4" / "10⁻⁴" starting at the "10"; returns the exponent.
std::optional<int> parse_power_of_ten(std::string_view s, std::size_t& i) {
    if (!skip_prefix(s, i, "10")) return std::nullopt;
    skip_spaces(s, i);
    if (skip_prefix(s, i, "^")) {
        skip_spaces(s, i);
        const bool neg = skip_minus(s, i);
        skip_spaces(s, i);
        int e = 0;
        const auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), e);
        if (ec != std::errc{}) return std::nullopt;
        i = static_cast<std::size_t>(p - s.data());
        skip_spaces(s, i);
        return neg ? -e : e;
    }
    const bool neg = skip_minus(s, i);
    int e = 0;
    bool any = false;
    for (int d; (d = superscript_digit(s, i)) >= 0;) {
        e = e * 10 + d;
        any = true;
    }
    if (!any) return std::nullopt;
    return neg ? -e : e;
}

}  // namespace

std::string number_pattern(UnitMode unit) {
    std::string suffix;
    if (unit == UnitMode::scale)
        suffix = "(?:\\s?\\\\?%|(?-i:[KMB])(?![A-Za-z])|\\s+(?:thousand|million|billion)\\b)?";
    else if (unit == UnitMode::keep)
        suffix = "(?:\\s?\\\\?%)?";
    return "(?<![\\w.])" + base_number() + suffix + "(?![A-Za-z0-9]|\\.\\d)";
}

std::optional<ParsedNumber> parse_number(std::string_view s, UnitMode unit) {
    std::size_t i = 0;
    while (i < s.size() && s[i] == ' ') ++i;
    double value = 0;

    std::size_t probe = i;
    if (auto e = parse_power_of_ten(s, probe)) {
        const std::string lit = "1e" + std::to_string(*e);
        std::from_chars(lit.data(), lit.data() + lit.size(), value);
        i = probe;
    } else {
        std::string digits;
        for (; i < s.size(); ++i) {
            const char c = s[i];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') digits += c;
            else if (c == ',' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) continue;
            else break;
        }
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E') && i + 1 < s.size() &&
            (std::isdigit(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '-' || s[i + 1] == '+')) {
            digits += 'e';
            ++i;
            if (s[i] == '-' || s[i] == '+') digits += s[i++];
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        }
        if (digits.empty() || digits == ".") return std::nullopt;
        const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc{} || p != digits.data() + digits.size()) return std::nullopt;

        std::size_t j = i;
        skip_spaces(s, j);
        if (skip_prefix(s, j, "\xC3\x97") || skip_prefix(s, j, "x") || skip_prefix(s, j, "*") ||
            skip_prefix(s, j, "\xC2\xB7") || skip_prefix(s, j, "\\times") || skip_prefix(s, j, "\\cdot")) {
            skip_spaces(s, j);
            if (auto e = parse_power_of_ten(s, j)) {
                // Reparse "3e-4" rather than multiply, so the result is the nearest double.
                if (digits.find('e') == std::string::npos) {
                    digits += "e" + std::to_string(*e);
                    std::from_chars(digits.data(), digits.data() + digits.size(), value);
                } else {
                    value *= std::pow(10.0, *e);
                }
                i = j;
            }
        }
    }

    ParsedNumber out{value, std::nullopt};
    std::size_t j = i;
    while (j < s.size() && s[j] == ' ') ++j;
    skip_prefix(s, j, "\\");
    if (j < s.size() && s[j] == '%') {
        if (unit == UnitMode::plain) return out;
        out.unit = "%";
        if (unit == UnitMode::scale) out.value = value / 100.0;
        return out;
    }
    if (unit != UnitMode::scale) return out;
    const std::string rest = to_lower(trim(s.substr(i)));
    if (rest == "k" || rest == "thousand") out = {value * 1e3, "K"};
    else if (rest == "m" || rest == "million") out = {value * 1e6, "M"};
    else if (rest == "b" || rest == "billion") out = {value * 1e9, "B"};
    return out;
}

std::optional<int> parse_count(std::string_view surface) {
    const std::string s = to_lower(trim(surface));
    if (s.empty()) return std::nullopt;
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && p == s.data() + s.size()) return v;
    const double w = word_count(s);
    if (w >= 0) return static_cast<int>(w);
    return std::nullopt;
}

std::vector<Rule> parse_rules(std::string_view text) {
    std::vector<Rule> rules;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto f = split_fields(t);
        const auto fail = [&](const std::string& why) {
            return RuleError("rule line " + std::to_string(lineno) + ": " + why);
        };
        if (f.size() != 7) throw fail("expected 7 fields, got " + std::to_string(f.size()));
        Rule r;
        r.line = lineno;
        if (f[0] == "hyper") r.kind = RuleKind::hyper;
        else if (f[0] == "result") r.kind = RuleKind::result;
        else throw fail("unknown kind '" + f[0] + "'");
        if (f[1].empty()) throw fail("empty name");
        r.name = f[1];
        r.key_pattern = f[2];
        r.value_pattern = f[3];
        if (f[3] == "NUM") r.value_kind = ValueKind::number;
        else if (f[3] == "NUMLIST") r.value_kind = ValueKind::number_list;
        else if (f[3] == "COUNT") r.value_kind = ValueKind::count;
        else r.value_kind = ValueKind::text;
        if (r.kind == RuleKind::result && r.value_kind != ValueKind::number)
            throw fail("result rules need a NUM value");
        if (f[4] == "plain") r.unit = UnitMode::plain;
        else if (f[4] == "scale") r.unit = UnitMode::scale;
        else if (f[4] == "keep") r.unit = UnitMode::keep;
        else throw fail("unknown unit mode '" + f[4] + "'");
        std::size_t window = 0;
        const auto [p, ec] = std::from_chars(f[5].data(), f[5].data() + f[5].size(), window);
        if (ec != std::errc{} || p != f[5].data() + f[5].size()) throw fail("bad window '" + f[5] + "'");
        r.window = window;
        if (f[6] == "after") r.order = RuleOrder::after;
        else if (f[6] == "before") r.order = RuleOrder::before;
        else throw fail("unknown order '" + f[6] + "'");
        compile(r);
        rules.push_back(std::move(r));
    }
    return rules;
}

std::vector<Rule> load_rules(const std::filesystem::path& path) {
    try {
        return parse_rules(read_file(path));
    } catch (const RuleError& e) {
        throw RuleError(path.string() + ": " + e.what());
    }
}

std::vector<GazetteerEntry> parse_gazetteer(std::string_view text) {
    std::vector<GazetteerEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto f = split_fields(t);
        if (f.size() != 2 || f[0].empty() || f[1].empty())
            throw RuleError("gazetteer line " + std::to_string(lineno) + ": expected 'Name | pattern'");
        try {
            out.push_back({f[0], boost::regex(f[1], boost::regex::perl | boost::regex::icase)});
        } catch (const boost::regex_error& e) {
            throw RuleError("gazetteer line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<GazetteerEntry> load_gazetteer(const std::filesystem::path& path) {
    return parse_gazetteer(read_file(path));
}

}  // namespace litsynth
