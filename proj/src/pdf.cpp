#include "litsynth/pdf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <set>

#include <boost/regex.hpp>
#include <zlib.h>

namespace litsynth::pdf {

std::string inflate(std::string_view compressed) {
    auto run = [&](int window_bits) -> std::optional<std::string> {
        z_stream zs{};
        if (inflateInit2(&zs, window_bits) != Z_OK) return std::nullopt;
        zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
        zs.avail_in = static_cast<uInt>(compressed.size());
        std::string out;
        char buf[16384];
        int rc = Z_OK;
        while (rc == Z_OK) {
            zs.next_out = reinterpret_cast<Bytef*>(buf);
            zs.avail_out = sizeof(buf);
            rc = ::inflate(&zs, Z_NO_FLUSH);
            out.append(buf, sizeof(buf) - zs.avail_out);
            if (rc == Z_BUF_ERROR && zs.avail_in == 0) break;  // truncated but usable
        }
        inflateEnd(&zs);
        if (rc != Z_STREAM_END && rc != Z_BUF_ERROR && out.empty()) return std::nullopt;
        return out;
    };
    if (auto out = run(15)) return *out;
    if (auto out = run(-15)) return *out;
    throw PdfError("corrupt Flate stream");
}

std::string deflate(std::string_view raw) {
    uLongf size = compressBound(static_cast<uLong>(raw.size()));
    std::string out(size, '\0');
    if (compress2(reinterpret_cast<Bytef*>(out.data()), &size, reinterpret_cast<const Bytef*>(raw.data()),
                  static_cast<uLong>(raw.size()), Z_DEFAULT_COMPRESSION) != Z_OK)
        throw PdfError("deflate failed");
    out.resize(size);
    return out;
}

namespace {

bool is_ws(char c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\0'; }
bool is_delim(char c) {
    return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' || c == ']' || c == '{' || c == '}' ||
           c == '/' || c == '%';
}

struct Object {
    enum class Kind { null, boolean, number, string, name, array, dict, ref, keyword } kind = Kind::null;
    double number = 0;
    int gen = 0;
    std::string text;  // string bytes, name, or keyword
    std::vector<Object> items;
    std::vector<std::pair<std::string, Object>> entries;

    const Object* get(std::string_view key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
        return nullptr;
    }
    bool is_name(std::string_view n) const { return kind == Kind::name && text == n; }
};

class Lexer {
public:
    Lexer(std::string_view data, std::size_t pos = 0) : d_(data), p_(pos) {}

    std::size_t pos() const { return p_; }
    void seek(std::size_t p) { p_ = p; }
    bool eof() {
        skip_ws();
        return p_ >= d_.size();
    }

    void skip_ws() {
        while (p_ < d_.size()) {
            if (is_ws(d_[p_])) {
                ++p_;
            } else if (d_[p_] == '%') {
                while (p_ < d_.size() && d_[p_] != '\n' && d_[p_] != '\r') ++p_;
            } else {
                break;
            }
        }
    }

    Object parse() {
        skip_ws();
        if (p_ >= d_.size()) throw PdfError("unexpected end of data");
        const char c = d_[p_];
        if (c == '<' && peek(1) == '<') {
            p_ += 2;
            Object o;
            o.kind = Object::Kind::dict;
            for (;;) {
                skip_ws();
                if (p_ >= d_.size()) throw PdfError("unterminated dictionary");
                if (d_[p_] == '>' && peek(1) == '>') {
                    p_ += 2;
                    break;
                }
                Object key = parse();
                if (key.kind != Object::Kind::name) throw PdfError("dictionary key is not a name");
                o.entries.emplace_back(key.text, parse());
            }
            return o;
        }
        if (c == '<') return hex_string();
        if (c == '(') return literal_string();
        if (c == '[') {
            ++p_;
            Object o;
            o.kind = Object::Kind::array;
            for (;;) {
                skip_ws();
                if (p_ >= d_.size()) throw PdfError("unterminated array");
                if (d_[p_] == ']') {
                    ++p_;
                    break;
                }
                o.items.push_back(parse());
            }
            return o;
        }
        if (c == '/') {
            ++p_;
            Object o;
            o.kind = Object::Kind::name;
            while (p_ < d_.size() && !is_ws(d_[p_]) && !is_delim(d_[p_])) o.text += d_[p_++];
            return o;
        }
        if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            Object o = number();
            // "n g R" is an indirect reference.
            const std::size_t save = p_;
            skip_ws();
            if (p_ < d_.size() && std::isdigit(static_cast<unsigned char>(d_[p_]))) {
                Object g = number();
                skip_ws();
                if (p_ < d_.size() && d_[p_] == 'R' && (p_ + 1 >= d_.size() || is_ws(d_[p_ + 1]) || is_delim(d_[p_ + 1]))) {
                    ++p_;
                    o.kind = Object::Kind::ref;
                    o.gen = static_cast<int>(g.number);
                    return o;
                }
            }
            p_ = save;
            return o;
        }
        Object o;
        o.kind = Object::Kind::keyword;
        if (c == ')' || c == '>' || c == ']' || c == '}' || c == '{') {
            o.text = std::string(1, c);
            ++p_;
            return o;
        }
        while (p_ < d_.size() && !is_ws(d_[p_]) && !is_delim(d_[p_])) o.text += d_[p_++];
        if (o.text == "true" || o.text == "false") {
            o.kind = Object::Kind::boolean;
            o.number = o.text == "true";
        } else if (o.text == "null") {
            o.kind = Object::Kind::null;
        }
        return o;
    }

private:
    char peek(std::size_t k) const { return p_ + k < d_.size() ? d_[p_ + k] : '\0'; }

    Object number() {
        std::string s;
        while (p_ < d_.size() && (std::isdigit(static_cast<unsigned char>(d_[p_])) || d_[p_] == '.' ||
                                  d_[p_] == '-' || d_[p_] == '+'))
            s += d_[p_++];
        Object o;
        o.kind = Object::Kind::number;
        o.number = std::strtod(s.c_str(), nullptr);
        return o;
    }

    Object hex_string() {
        ++p_;
        std::string hex;
        while (p_ < d_.size() && d_[p_] != '>') {
            if (std::isxdigit(static_cast<unsigned char>(d_[p_]))) hex += d_[p_];
            ++p_;
        }
        ++p_;
        if (hex.size() % 2) hex += '0';
        Object o;
        o.kind = Object::Kind::string;
        for (std::size_t i = 0; i < hex.size(); i += 2)
            o.text += static_cast<char>(std::stoi(hex.substr(i, 2), nullptr, 16));
        return o;
    }

    Object literal_string() {
        ++p_;
        Object o;
        o.kind = Object::Kind::string;
        int depth = 1;
        while (p_ < d_.size()) {
            char c = d_[p_++];
            if (c == '\\') {
                if (p_ >= d_.size()) break;
                char e = d_[p_++];
                switch (e) {
                    case 'n': o.text += '\n'; break;
                    case 'r': o.text += '\r'; break;
                    case 't': o.text += '\t'; break;
                    case 'b': o.text += '\b'; break;
                    case 'f': o.text += '\f'; break;
                    case '\r':
                        if (p_ < d_.size() && d_[p_] == '\n') ++p_;
                        break;
                    case '\n': break;
                    default:
                        if (e >= '0' && e <= '7') {
                            int v = e - '0';
                            for (int k = 0; k < 2 && p_ < d_.size() && d_[p_] >= '0' && d_[p_] <= '7'; ++k)
                                v = v * 8 + (d_[p_++] - '0');
                            o.text += static_cast<char>(v & 0xFF);
                        } else {
                            o.text += e;
                        }
                }
                continue;
            }
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) break;
            o.text += c;
        }
        return o;
    }

    std::string_view d_;
    std::size_t p_;
};

struct Stored {
    Object value;
    std::optional<std::string> stream;  // raw (still encoded) stream bytes
};

std::string ascii85_decode(std::string_view in) {
    std::string out;
    std::uint32_t tuple = 0;
    int count = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const char c = in[i];
        if (is_ws(c)) continue;
        if (c == '~') break;
        if (c == 'z' && count == 0) {
            out.append(4, '\0');
            continue;
        }
        if (c < '!' || c > 'u') throw PdfError("bad ASCII85 data");
        tuple = tuple * 85 + static_cast<std::uint32_t>(c - '!');
        if (++count == 5) {
            for (int s = 24; s >= 0; s -= 8) out += static_cast<char>((tuple >> s) & 0xFF);
            tuple = 0;
            count = 0;
        }
    }
    if (count > 1) {
        for (int k = count; k < 5; ++k) tuple = tuple * 85 + 84;
        for (int k = 0; k < count - 1; ++k) out += static_cast<char>((tuple >> (24 - 8 * k)) & 0xFF);
    }
    return out;
}

std::string asciihex_decode(std::string_view in) {
    std::string out, hex;
    for (char c : in) {
        if (c == '>') break;
        if (std::isxdigit(static_cast<unsigned char>(c))) hex += c;
    }
    if (hex.size() % 2) hex += '0';
    for (std::size_t i = 0; i < hex.size(); i += 2) out += static_cast<char>(std::stoi(hex.substr(i, 2), nullptr, 16));
    return out;
}

class Document {
public:
    explicit Document(std::string_view bytes) : bytes_(bytes) {
        const auto header = bytes.substr(0, std::min<std::size_t>(bytes.size(), 1024)).find("%PDF-");
        if (header == std::string_view::npos) throw PdfError("not a PDF (missing %PDF- header)");
        scan_objects();
        expand_object_streams();
    }

    std::vector<std::string> warnings;

    const Object* resolve(const Object* o, int depth = 0) const {
        while (o && o->kind == Object::Kind::ref && depth++ < 32) {
            auto it = objects_.find(static_cast<int>(o->number));
            o = it == objects_.end() ? nullptr : &it->second.value;
        }
        return o;
    }

    std::optional<std::string> decoded_stream(int num) {
        auto it = objects_.find(num);
        if (it == objects_.end() || !it->second.stream) return std::nullopt;
        return decode(it->second.value, *it->second.stream);
    }

    std::vector<int> pages() const {
        std::vector<int> out;
        std::set<int> seen;
        for (const auto& [num, st] : objects_) {
            const auto* type = st.value.get("Type");
            if (type && type->is_name("Catalog")) {
                const auto* root = st.value.get("Pages");
                if (root && root->kind == Object::Kind::ref) walk(static_cast<int>(root->number), out, seen);
                break;
            }
        }
        if (out.empty()) {
            for (const auto& [num, st] : objects_) {
                const auto* type = st.value.get("Type");
                if (type && type->is_name("Page")) out.push_back(num);
            }
        }
        return out;
    }

    const Object& object(int num) const { return objects_.at(num).value; }

    std::string decode(const Object& dict, std::string data) {
        const Object* filter = resolve(dict.get("Filter"));
        std::vector<std::string> filters;
        if (filter && filter->kind == Object::Kind::name) filters.push_back(filter->text);
        if (filter && filter->kind == Object::Kind::array)
            for (const auto& f : filter->items)
                if (f.kind == Object::Kind::name) filters.push_back(f.text);
        for (const auto& f : filters) {
            if (f == "FlateDecode" || f == "Fl") data = inflate(data);
            else if (f == "ASCII85Decode" || f == "A85") data = ascii85_decode(data);
            else if (f == "ASCIIHexDecode" || f == "AHx") data = asciihex_decode(data);
            else throw PdfError("unsupported stream filter " + f);
        }
        return data;
    }

private:
    void walk(int num, std::vector<int>& out, std::set<int>& seen) const {
        if (!seen.insert(num).second) return;
        auto it = objects_.find(num);
        if (it == objects_.end()) return;
        const auto& node = it->second.value;
        const auto* type = node.get("Type");
        if (type && type->is_name("Page")) {
            out.push_back(num);
            return;
        }
        const auto* kids = resolve(node.get("Kids"));
        if (!kids || kids->kind != Object::Kind::array) return;
        for (const auto& kid : kids->items)
            if (kid.kind == Object::Kind::ref) walk(static_cast<int>(kid.number), out, seen);
    }

    void scan_objects() {
        static const boost::regex kObjHeader(R"((\d+)\s+(\d+)\s+obj\b)");
        auto begin = bytes_.begin();
        const auto end = bytes_.end();
        boost::match_results<std::string_view::const_iterator> m;
        while (boost::regex_search(begin, end, m, kObjHeader)) {
            const int num = std::stoi(m[1].str());
            const auto after = static_cast<std::size_t>(m[0].second - bytes_.begin());
            Lexer lex(bytes_, after);
            Stored stored;
            std::size_t resume = after;
            try {
                stored.value = lex.parse();
                lex.skip_ws();
                resume = lex.pos();
                if (bytes_.compare(resume, 6, "stream") == 0) {
                    std::size_t start = resume + 6;
                    if (start < bytes_.size() && bytes_[start] == '\r') ++start;
                    if (start < bytes_.size() && bytes_[start] == '\n') ++start;
                    std::size_t stop = std::string_view::npos;
                    const Object* len = stored.value.get("Length");
                    if (len && len->kind == Object::Kind::number) {
                        const auto n = static_cast<std::size_t>(len->number);
                        if (start + n <= bytes_.size()) {
                            const auto tail = bytes_.find("endstream", start + n);
                            if (tail != std::string_view::npos && tail - (start + n) <= 2) stop = start + n;
                        }
                    }
                    const auto tail = bytes_.find("endstream", start);
                    if (tail == std::string_view::npos) throw PdfError("unterminated stream");
                    if (stop == std::string_view::npos) {
                        stop = tail;
                        if (stop > start && bytes_[stop - 1] == '\n') --stop;
                        if (stop > start && bytes_[stop - 1] == '\r') --stop;
                    }
                    stored.stream = std::string(bytes_.substr(start, stop - start));
                    resume = tail + 9;
                }
                objects_[num] = std::move(stored);
            } catch (const PdfError& e) {
                warnings.push_back("object " + std::to_string(num) + ": " + e.what());
            }
            begin = bytes_.begin() + static_cast<std::ptrdiff_t>(std::max(resume, after));
        }
        if (objects_.empty()) throw PdfError("no objects found");
    }

    void expand_object_streams() {
        std::vector<int> containers;
        for (const auto& [num, st] : objects_) {
            const auto* type = st.value.get("Type");
            if (st.stream && type && type->is_name("ObjStm")) containers.push_back(num);
        }
        for (int num : containers) {
            try {
                const auto& dict = objects_.at(num).value;
                const auto* n = dict.get("N");
                const auto* first = dict.get("First");
                if (!n || !first) continue;
                const std::string data = decode(dict, *objects_.at(num).stream);
                Lexer header(data);
                std::vector<std::pair<int, std::size_t>> index;
                for (int i = 0; i < static_cast<int>(n->number); ++i) {
                    const auto obj_num = header.parse();
                    const auto offset = header.parse();
                    index.emplace_back(static_cast<int>(obj_num.number), static_cast<std::size_t>(offset.number));
                }
                for (const auto& [obj_num, offset] : index) {
                    Lexer lex(data, static_cast<std::size_t>(first->number) + offset);
                    if (!objects_.count(obj_num)) objects_[obj_num] = Stored{lex.parse(), std::nullopt};
                }
            } catch (const std::exception& e) {
                warnings.push_back("object stream " + std::to_string(num) + ": " + e.what());
            }
        }
    }

    std::string_view bytes_;
    std::map<int, Stored> objects_;
};

// WinAnsiEncoding for 0x80..0x9F; remaining high bytes are Latin-1.
constexpr char32_t kWinAnsiHigh[32] = {0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
                                       0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
                                       0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
                                       0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178};

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

void append_pdf_string(std::string& out, std::string_view bytes) {
    for (unsigned char b : bytes) {
        if (b < 0x80) {
            out += static_cast<char>(b);
        } else if (b < 0xA0) {
            const char32_t cp = kWinAnsiHigh[b - 0x80];
            if (cp) append_utf8(out, cp);
        } else {
            append_utf8(out, b);
        }
    }
}

void newline(std::string& out) {
    if (!out.empty() && out.back() != '\n') out += '\n';
}

std::string content_text(std::string_view content) {
    std::string out;
    Lexer lex(content);
    std::vector<Object> operands;
    double last_y = 0;
    bool have_y = false;
    while (!lex.eof()) {
        Object tok;
        try {
            tok = lex.parse();
        } catch (const PdfError&) {
            break;
        }
        if (tok.kind != Object::Kind::keyword) {
            operands.push_back(std::move(tok));
            continue;
        }
        const std::string& op = tok.text;
        auto num = [&](std::size_t from_end) {
            if (operands.size() < from_end) return 0.0;
            const auto& o = operands[operands.size() - from_end];
            return o.kind == Object::Kind::number ? o.number : 0.0;
        };
        if (op == "BI") {
            const auto rest = content.substr(lex.pos());
            const auto ei = rest.find("EI");
            lex.seek(ei == std::string_view::npos ? content.size() : lex.pos() + ei + 2);
        } else if (op == "Tj" && !operands.empty() && operands.back().kind == Object::Kind::string) {
            append_pdf_string(out, operands.back().text);
        } else if (op == "'" && !operands.empty() && operands.back().kind == Object::Kind::string) {
            newline(out);
            append_pdf_string(out, operands.back().text);
        } else if (op == "\"" && !operands.empty() && operands.back().kind == Object::Kind::string) {
            newline(out);
            append_pdf_string(out, operands.back().text);
        } else if (op == "TJ" && !operands.empty() && operands.back().kind == Object::Kind::array) {
            for (const auto& item : operands.back().items) {
                if (item.kind == Object::Kind::string) {
                    append_pdf_string(out, item.text);
                } else if (item.kind == Object::Kind::number && item.number < -180 && !out.empty() &&
                           out.back() != ' ' && out.back() != '\n') {
                    out += ' ';
                }
            }
        } else if (op == "T*") {
            out += '\n';
        } else if (op == "Td" || op == "TD") {
            if (num(1) != 0) out += '\n';
            else if (num(2) > 0 && !out.empty() && out.back() != ' ' && out.back() != '\n') out += ' ';
        } else if (op == "Tm") {
            const double y = num(1);
            if (have_y && y != last_y) newline(out);
            last_y = y;
            have_y = true;
        } else if (op == "ET") {
            newline(out);
        }
        operands.clear();
    }
    return out;
}

}  // namespace

ExtractedText extract_text(std::string_view bytes) {
    Document doc(bytes);
    ExtractedText result;
    result.warnings = doc.warnings;
    const auto pages = doc.pages();
    result.page_count = static_cast<int>(pages.size());
    for (int page : pages) {
        const Object* contents = doc.resolve(doc.object(page).get("Contents"));
        std::vector<int> streams;
        const Object* raw = doc.object(page).get("Contents");
        if (raw && raw->kind == Object::Kind::ref) {
            if (contents && contents->kind == Object::Kind::array) {
                for (const auto& c : contents->items)
                    if (c.kind == Object::Kind::ref) streams.push_back(static_cast<int>(c.number));
            } else {
                streams.push_back(static_cast<int>(raw->number));
            }
        } else if (raw && raw->kind == Object::Kind::array) {
            for (const auto& c : raw->items)
                if (c.kind == Object::Kind::ref) streams.push_back(static_cast<int>(c.number));
        }
        std::string content;
        for (int s : streams) {
            try {
                if (auto data = doc.decoded_stream(s)) {
                    content += *data;
                    content += '\n';
                }
            } catch (const PdfError& e) {
                result.warnings.push_back("page content: " + std::string(e.what()));
            }
        }
        auto text = content_text(content);
        newline(text);
        result.text += text;
    }
    return result;
}

namespace {

std::string encode_winansi(std::string_view utf8) {
    std::string out;
    for (std::size_t i = 0; i < utf8.size();) {
        const auto b0 = static_cast<unsigned char>(utf8[i]);
        char32_t cp = b0;
        std::size_t len = 1;
        if (b0 >= 0xF0) len = 4, cp = b0 & 0x07;
        else if (b0 >= 0xE0) len = 3, cp = b0 & 0x0F;
        else if (b0 >= 0xC0) len = 2, cp = b0 & 0x1F;
        for (std::size_t k = 1; k < len && i + k < utf8.size(); ++k)
            cp = (cp << 6) | (static_cast<unsigned char>(utf8[i + k]) & 0x3F);
        i += len;
        if (cp < 0x80) {
            out += static_cast<char>(cp);
            continue;
        }
        if (cp >= 0xA0 && cp <= 0xFF) {
            out += static_cast<char>(cp);
            continue;
        }
        if (cp == 0x2212) {
            out += '-';
            continue;
        }
        char mapped = '?';
        for (int k = 0; k < 32; ++k)
            if (kWinAnsiHigh[k] == cp) mapped = static_cast<char>(0x80 + k);
        out += mapped;
    }
    return out;
}

std::string escape_literal(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '(' || c == ')' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string write_text_pdf(const std::vector<std::vector<std::string>>& pages, bool compress) {
    std::vector<std::string> objects;  // bodies, object number = index + 1
    const std::size_t n_pages = pages.size();
    // 1 catalog, 2 pages, 3 font, then (page, content) pairs.
    std::string kids;
    for (std::size_t i = 0; i < n_pages; ++i) kids += std::to_string(4 + 2 * i) + " 0 R ";
    objects.push_back("<< /Type /Catalog /Pages 2 0 R >>");
    objects.push_back("<< /Type /Pages /Kids [" + kids + "] /Count " + std::to_string(n_pages) + " >>");
    objects.push_back("<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding >>");
    for (std::size_t i = 0; i < n_pages; ++i) {
        std::string content = "BT\n/F1 10 Tf\n13 TL\n56 790 Td\n";
        for (const auto& line : pages[i]) {
            if (!line.empty()) content += "(" + escape_literal(encode_winansi(line)) + ") Tj\n";
            content += "T*\n";
        }
        content += "ET\n";
        const std::string data = compress ? deflate(content) : content;
        const std::string filter = compress ? " /Filter /FlateDecode" : "";
        objects.push_back("<< /Type /Page /Parent 2 0 R /MediaBox [0 0 612 842] /Resources << /Font << /F1 3 0 R >> "
                          ">> /Contents " +
                          std::to_string(5 + 2 * i) + " 0 R >>");
        objects.push_back("<< /Length " + std::to_string(data.size()) + filter + " >>\nstream\n" + data +
                          "\nendstream");
    }
    std::string out = "%PDF-1.4\n%\xE2\xE3\xCF\xD3\n";
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        offsets.push_back(out.size());
        out += std::to_string(i + 1) + " 0 obj\n" + objects[i] + "\nendobj\n";
    }
    const std::size_t xref = out.size();
    out += "xref\n0 " + std::to_string(objects.size() + 1) + "\n0000000000 65535 f \n";
    char entry[32];
    for (auto off : offsets) {
        std::snprintf(entry, sizeof(entry), "%010zu 00000 n \n", off);
        out += entry;
    }
    out += "trailer\n<< /Size " + std::to_string(objects.size() + 1) + " /Root 1 0 R >>\nstartxref\n" +
           std::to_string(xref) + "\n%%EOF\n";
    return out;
}

std::vector<std::vector<std::string>> layout_pages(std::string_view text, std::size_t width,
                                                   std::size_t lines_per_page) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto para = text.substr(pos, nl - pos);
        if (para.find_first_not_of(' ') == std::string_view::npos) {
            lines.emplace_back();
        } else {
            std::string line;
            std::size_t w = 0;
            while (w < para.size()) {
                while (w < para.size() && para[w] == ' ') ++w;
                std::size_t e = w;
                while (e < para.size() && para[e] != ' ') ++e;
                if (e == w) break;
                const auto word = para.substr(w, e - w);
                if (!line.empty() && line.size() + 1 + word.size() > width) {
                    lines.push_back(std::move(line));
                    line.clear();
                }
                if (!line.empty()) line += ' ';
                line += word;
                w = e;
            }
            if (!line.empty()) lines.push_back(std::move(line));
        }
        pos = nl + 1;
    }
    std::vector<std::vector<std::string>> pages;
    for (std::size_t i = 0; i < lines.size(); i += lines_per_page) {
        pages.emplace_back(lines.begin() + static_cast<std::ptrdiff_t>(i),
                           lines.begin() + static_cast<std::ptrdiff_t>(std::min(lines.size(), i + lines_per_page)));
    }
    if (pages.empty()) pages.emplace_back();
    return pages;
}

}  // namespace litsynth::pdf
