#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace litsynth {

struct HttpResponse {
    int status = 0;
    std::string body;
};

using HttpHeaders = std::map<std::string, std::string>;

/// Transport-level failure: connection refused, timeout, no recording.
class HttpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HttpClient {
public:
    virtual ~HttpClient() = default;
    virtual HttpResponse get(const std::string& url, const HttpHeaders& headers = {}) = 0;
    virtual HttpResponse post(const std::string& url, const std::string& body, const std::string& content_type,
                              const HttpHeaders& headers = {}) = 0;
};

struct UrlParts {
    std::string origin;  // scheme://host[:port]
    std::string path;    // path + query, always starts with '/'
};
UrlParts split_url(const std::string& url);

std::string url_encode(const std::string& s);

/// Live client backed by cpp-httplib. Follows redirects.
class NetworkHttpClient final : public HttpClient {
public:
    explicit NetworkHttpClient(std::chrono::seconds timeout = std::chrono::seconds(30)) : timeout_(timeout) {}
    HttpResponse get(const std::string& url, const HttpHeaders& headers = {}) override;
    HttpResponse post(const std::string& url, const std::string& body, const std::string& content_type,
                      const HttpHeaders& headers = {}) override;

private:
    std::chrono::seconds timeout_;
};

/// Serves recorded request/response pairs. The recording file is line
/// delimited; each line is {"method", "url", "status", "body"}.
/// Requests with no recording fail with HttpError.
class ReplayHttpClient final : public HttpClient {
public:
    explicit ReplayHttpClient(const std::filesystem::path& recordings);
    ReplayHttpClient() = default;

    void add(std::string method, std::string url, HttpResponse response);
    HttpResponse get(const std::string& url, const HttpHeaders& headers = {}) override;
    HttpResponse post(const std::string& url, const std::string& body, const std::string& content_type,
                      const HttpHeaders& headers = {}) override;
    std::size_t calls() const { return calls_.load(); }

private:
    HttpResponse lookup(const std::string& method, const std::string& url);

    std::map<std::pair<std::string, std::string>, HttpResponse> responses_;
    std::atomic<std::size_t> calls_{0};
};

/// Forwards to another client and appends every exchange to a recording
/// file in the format ReplayHttpClient reads.
class RecordingHttpClient final : public HttpClient {
public:
    RecordingHttpClient(HttpClient& inner, std::filesystem::path out) : inner_(inner), out_(std::move(out)) {}
    HttpResponse get(const std::string& url, const HttpHeaders& headers = {}) override;
    HttpResponse post(const std::string& url, const std::string& body, const std::string& content_type,
                      const HttpHeaders& headers = {}) override;

private:
    void record(const std::string& method, const std::string& url, const HttpResponse& r);

    HttpClient& inner_;
    std::filesystem::path out_;
    std::mutex mu_;
};

}  // namespace litsynth
