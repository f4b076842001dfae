#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "mappergpt/llm.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "json.hpp"
#include "mappergpt/errors.hpp"
#include "mappergpt/util.hpp"

namespace mappergpt {

std::string_view to_string(BackendErrorKind kind) {
    switch (kind) {
        case BackendErrorKind::Transport: return "transport";
        case BackendErrorKind::Protocol: return "protocol";
        case BackendErrorKind::MalformedReply: return "malformed-reply";
        case BackendErrorKind::MockMiss: return "mock-miss";
        case BackendErrorKind::CacheMiss: return "cache-miss";
        case BackendErrorKind::PromptTooLong: return "prompt-too-long";
        case BackendErrorKind::InvalidRequest: return "invalid-request";
        case BackendErrorKind::Config: return "config";
    }
    return "unknown";
}

void validate(const CompletionRequest& request) {
    if (request.model_name.empty())
        throw BackendError(BackendErrorKind::InvalidRequest, "model name is empty");
    if (request.prompt.empty())
        throw BackendError(BackendErrorKind::InvalidRequest, "prompt is empty");
    if (request.temperature < 0.0 || request.temperature > 2.0)
        throw BackendError(BackendErrorKind::InvalidRequest,
                           "temperature out of [0,2]: " +
                               std::to_string(request.temperature));
    if (request.max_output_tokens <= 0)
        throw BackendError(BackendErrorKind::InvalidRequest,
                           "max_output_tokens must be positive");
    if (request.prompt.size() > kMaxPromptChars)
        throw BackendError(BackendErrorKind::PromptTooLong,
                           "prompt is " + std::to_string(request.prompt.size()) +
                               " chars, limit is " + std::to_string(kMaxPromptChars));
}

std::string complete(CompletionBackend& backend, const CompletionRequest& request) {
    validate(request);
    return backend.complete(request);
}

std::string completion_cache_key(const CompletionRequest& request) {
    return sha256_hex("mappergpt-completion-v1\n" + request.model_name + "\n" +
                      format_fixed(request.temperature, 6) + "\n" + request.prompt);
}

std::string cached_complete(CompletionBackend& backend,
                            const std::filesystem::path& cache_dir,
                            const CompletionRequest& request,
                            std::vector<std::string>* warnings) {
    validate(request);
    const std::filesystem::path entry =
        cache_dir / (completion_cache_key(request) + ".response");
    std::error_code ec;
    if (std::filesystem::exists(entry, ec)) return read_file(entry);

    std::string response = backend.complete(request);
    try {
        std::filesystem::create_directories(cache_dir);
        write_file_atomic(entry, response);
    } catch (const std::exception& e) {
        if (warnings)
            warnings->push_back("cache write failed for " + entry.string() + ": " +
                                e.what());
    }
    return response;
}

namespace {

bool is_hex64(std::string_view s) {
    if (s.size() != 64) return false;
    for (const unsigned char c : s)
        if (!std::isxdigit(c)) return false;
    return true;
}

// Fixture files may carry one editor-added final newline; it is not part of
// the prompt or response.
std::string strip_final_newline(std::string s) {
    if (!s.empty() && s.back() == '\n') s.pop_back();
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

MockBackend::MockBackend(const std::filesystem::path& fixtures_dir) {
    namespace fs = std::filesystem;
    std::map<std::string, std::pair<bool, bool>> stems; // stem -> (prompt, response)
    for (const auto& entry : fs::directory_iterator(fixtures_dir)) {
        if (!entry.is_regular_file()) continue;
        const fs::path& p = entry.path();
        if (p.extension() == ".prompt") stems[p.stem().string()].first = true;
        if (p.extension() == ".response") stems[p.stem().string()].second = true;
    }
    for (const auto& [stem, present] : stems) {
        const auto [has_prompt, has_response] = present;
        if (has_prompt && !has_response)
            throw DataError("mock fixture " + stem + ".prompt has no " + stem +
                            ".response");
        const std::string response =
            strip_final_newline(read_file(fixtures_dir / (stem + ".response")));
        if (has_prompt) {
            by_prompt_[strip_final_newline(read_file(fixtures_dir / (stem + ".prompt")))] =
                response;
        } else if (is_hex64(stem)) {
            by_hash_[stem] = response;
        } else {
            throw DataError("stray mock fixture (no .prompt, name not a sha256): " +
                            stem + ".response");
        }
    }
}

void MockBackend::add_response(std::string prompt, std::string response) {
    by_prompt_[std::move(prompt)] = std::move(response);
}

std::string MockBackend::complete(const CompletionRequest& request) {
    calls_.fetch_add(1);
    if (const auto it = by_prompt_.find(request.prompt); it != by_prompt_.end())
        return it->second;
    const std::string hash = sha256_hex(request.prompt);
    if (const auto it = by_hash_.find(hash); it != by_hash_.end()) return it->second;
    throw BackendError(BackendErrorKind::MockMiss,
                       "no mock response for prompt (sha256 " + hash + ")");
}

std::string CacheOnlyBackend::complete(const CompletionRequest&) {
    throw BackendError(BackendErrorKind::CacheMiss,
                       "cache-only backend: response not in cache");
}

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
    if (!options_.sleeper)
        options_.sleeper = [](std::chrono::milliseconds d) {
            std::this_thread::sleep_for(d);
        };
}

HttpBackend HttpBackend::from_env() {
    const char* base = std::getenv("MAPPERGPT_BASE_URL");
    if (!base || !*base)
        throw BackendError(BackendErrorKind::Config, "MAPPERGPT_BASE_URL is not set");
    HttpBackendOptions options;
    options.base_url = base;
    if (const char* key = std::getenv("MAPPERGPT_API_KEY")) options.api_key = key;
    return HttpBackend(std::move(options));
}

namespace {

std::string body_excerpt(const std::string& body) {
    constexpr size_t kLimit = 200;
    if (body.size() <= kLimit) return body;
    return body.substr(0, kLimit) + "...";
}

std::string extract_message_text(const std::string& body) {
    nlohmann::json reply;
    try {
        reply = nlohmann::json::parse(body);
    } catch (const std::exception& e) {
        throw BackendError(BackendErrorKind::MalformedReply,
                           std::string("invalid JSON reply: ") + e.what());
    }
    const auto choices = reply.find("choices");
    if (choices == reply.end() || !choices->is_array() || choices->empty())
        throw BackendError(BackendErrorKind::MalformedReply, "reply has no choices");
    const auto& first = (*choices)[0];
    if (!first.contains("message") || !first["message"].contains("content") ||
        !first["message"]["content"].is_string())
        throw BackendError(BackendErrorKind::MalformedReply,
                           "reply choice has no message content");
    return first["message"]["content"].get<std::string>();
}

} // namespace

std::string HttpBackend::complete(const CompletionRequest& request) {
    const std::string& url = options_.base_url;
    const size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw BackendError(BackendErrorKind::Config,
                           "base URL must start with http:// or https://: " + url);
    const size_t path_start = url.find('/', scheme_end + 3);
    const std::string origin =
        path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    const std::string endpoint = prefix + "/chat/completions";

    httplib::Client client(origin);
    client.set_connection_timeout(options_.read_timeout);
    client.set_read_timeout(options_.read_timeout);
    client.set_write_timeout(options_.read_timeout);

    httplib::Headers headers;
    if (!options_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + options_.api_key);

    const nlohmann::json body = {
        {"model", request.model_name},
        {"messages", {{{"role", "user"}, {"content", request.prompt}}}},
        {"temperature", request.temperature},
        {"max_tokens", request.max_output_tokens},
    };
    const std::string payload = body.dump();

    const int max_attempts = std::max(1, options_.max_attempts);
    std::chrono::milliseconds delay = options_.backoff_base;
    for (int attempt = 1;; ++attempt) {
        httplib::Result res = client.Post(endpoint, headers, payload, "application/json");
        if (res && res->status != 429) {
            if (res->status < 200 || res->status >= 300)
                throw BackendError(BackendErrorKind::Protocol,
                                   "HTTP " + std::to_string(res->status) + " from " +
                                       origin + endpoint + ": " +
                                       body_excerpt(res->body));
            return extract_message_text(res->body);
        }
        if (attempt >= max_attempts) {
            if (!res)
                throw BackendError(BackendErrorKind::Transport,
                                   "network failure after " +
                                       std::to_string(max_attempts) + " attempts: " +
                                       httplib::to_string(res.error()));
            throw BackendError(BackendErrorKind::Protocol,
                               "HTTP 429 after " + std::to_string(max_attempts) +
                                   " attempts: " + body_excerpt(res->body));
        }
        options_.sleeper(delay);
        delay = std::chrono::milliseconds(
            static_cast<long long>(std::llround(delay.count() * options_.backoff_factor)));
    }
}

} // namespace mappergpt
