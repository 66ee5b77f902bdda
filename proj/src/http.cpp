#include "litsynth/http.hpp"

#include <cctype>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace litsynth {

UrlParts split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw HttpError("malformed url: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string url_encode(const std::string& s) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0xF];
        }
    }
    return out;
}

namespace {

httplib::Headers to_httplib(const HttpHeaders& headers) {
    httplib::Headers out;
    for (const auto& [k, v] : headers) out.emplace(k, v);
    return out;
}

httplib::Client make_client(const std::string& origin, std::chrono::seconds timeout) {
    httplib::Client cli(origin);
    cli.set_follow_location(true);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    return cli;
}

}  // namespace

HttpResponse NetworkHttpClient::get(const std::string& url, const HttpHeaders& headers) {
    const auto parts = split_url(url);
    auto cli = make_client(parts.origin, timeout_);
    auto res = cli.Get(parts.path, to_httplib(headers));
    if (!res) throw HttpError("GET " + url + ": " + httplib::to_string(res.error()));
    return {res->status, res->body};
}

HttpResponse NetworkHttpClient::post(const std::string& url, const std::string& body, const std::string& content_type,
                                     const HttpHeaders& headers) {
    const auto parts = split_url(url);
    auto cli = make_client(parts.origin, timeout_);
    auto res = cli.Post(parts.path, to_httplib(headers), body, content_type);
    if (!res) throw HttpError("POST " + url + ": " + httplib::to_string(res.error()));
    return {res->status, res->body};
}

ReplayHttpClient::ReplayHttpClient(const std::filesystem::path& recordings) {
    std::ifstream in(recordings);
    if (!in) throw std::runtime_error("cannot open recordings " + recordings.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        add(j.value("method", "GET"), j.at("url").get<std::string>(),
            {j.value("status", 200), j.value("body", std::string{})});
    }
}

void ReplayHttpClient::add(std::string method, std::string url, HttpResponse response) {
    responses_[{std::move(method), std::move(url)}] = std::move(response);
}

HttpResponse ReplayHttpClient::lookup(const std::string& method, const std::string& url) {
    ++calls_;
    auto it = responses_.find({method, url});
    if (it == responses_.end()) throw HttpError("no recorded response for " + method + " " + url);
    return it->second;
}

HttpResponse ReplayHttpClient::get(const std::string& url, const HttpHeaders&) { return lookup("GET", url); }

HttpResponse ReplayHttpClient::post(const std::string& url, const std::string&, const std::string&,
                                    const HttpHeaders&) {
    return lookup("POST", url);
}

void RecordingHttpClient::record(const std::string& method, const std::string& url, const HttpResponse& r) {
    std::lock_guard lock(mu_);
    std::ofstream out(out_, std::ios::app);
    out << nlohmann::json{{"method", method}, {"url", url}, {"status", r.status}, {"body", r.body}}.dump() << '\n';
}

HttpResponse RecordingHttpClient::get(const std::string& url, const HttpHeaders& headers) {
    auto r = inner_.get(url, headers);
    record("GET", url, r);
    return r;
}

HttpResponse RecordingHttpClient::post(const std::string& url, const std::string& body,
                                       const std::string& content_type, const HttpHeaders& headers) {
    auto r = inner_.post(url, body, content_type, headers);
    record("POST", url, r);
    return r;
}

}  // namespace litsynth
