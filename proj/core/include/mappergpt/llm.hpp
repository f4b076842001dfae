#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mappergpt {

/// Prompts above this size are rejected with BackendErrorKind::PromptTooLong
/// rather than silently truncated.
inline constexpr std::size_t kMaxPromptChars = 12000;

struct CompletionRequest {
    std::string model_name;
    std::string prompt;
    double temperature = 0.0;   // [0, 2]
    int max_output_tokens = 500;
};

enum class BackendErrorKind {
    Transport,      // network failure after retries
    Protocol,       // non-success HTTP status
    MalformedReply, // unparseable body or empty choices
    MockMiss,       // no fixture for this prompt
    CacheMiss,      // cache-only backend, key not cached
    PromptTooLong,  // over kMaxPromptChars
    InvalidRequest, // request violates its invariants
    Config,         // missing endpoint/credentials
};

std::string_view to_string(BackendErrorKind kind);

/// The single typed failure a backend surfaces. Maps to exit code 3 in the
/// CLI.
class BackendError : public std::runtime_error {
public:
    BackendError(BackendErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    BackendErrorKind kind() const { return kind_; }

private:
    BackendErrorKind kind_;
};

/// Completion capability: returns response text or throws exactly one
/// BackendError. Implementations must tolerate concurrent complete() calls.
class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    virtual std::string complete(const CompletionRequest& request) = 0;
    virtual std::string_view name() const = 0;
};

/// Throws BackendError(InvalidRequest / PromptTooLong) when the request is
/// unusable.
void validate(const CompletionRequest& request);

/// Validates the request, then dispatches to the backend.
std::string complete(CompletionBackend& backend, const CompletionRequest& request);

/// Cache key: SHA-256 over (model_name, temperature, prompt).
std::string completion_cache_key(const CompletionRequest& request);

/// Looks the key up under cache_dir first; on a hit the backend is never
/// invoked. On a miss the response is persisted under the key (temp file +
/// atomic rename). A failed cache write only records a warning.
std::string cached_complete(CompletionBackend& backend,
                            const std::filesystem::path& cache_dir,
                            const CompletionRequest& request,
                            std::vector<std::string>* warnings = nullptr);

/// Deterministic test backend fed from a fixtures directory holding
///   <name>.prompt / <name>.response   exact-prompt pairs, and/or
///   <sha256-of-prompt>.response       hash-keyed responses.
/// A single trailing newline in fixture files is ignored when matching.
class MockBackend : public CompletionBackend {
public:
    MockBackend() = default;
    explicit MockBackend(const std::filesystem::path& fixtures_dir);

    void add_response(std::string prompt, std::string response);

    std::string complete(const CompletionRequest& request) override;
    std::string_view name() const override { return "mock"; }

    /// Number of complete() invocations, for request-counting tests.
    int calls() const { return calls_.load(); }

private:
    std::map<std::string, std::string> by_prompt_;
    std::map<std::string, std::string> by_hash_; // sha256(prompt) -> response
    std::atomic<int> calls_{0};
};

/// Fails every call with CacheMiss: combined with cached_complete it serves
/// cached responses and refuses to go out, for fully offline runs.
class CacheOnlyBackend : public CompletionBackend {
public:
    std::string complete(const CompletionRequest& request) override;
    std::string_view name() const override { return "cache-only"; }
};

struct HttpBackendOptions {
    std::string base_url; // e.g. "http://localhost:8000/v1"
    std::string api_key;  // sent as a bearer token when non-empty
    int max_attempts = 5;
    std::chrono::milliseconds backoff_base{2000};
    double backoff_factor = 2.0;
    std::chrono::seconds read_timeout{120};
    /// Injectable for tests; defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleeper;
};

/// OpenAI-compatible chat-completions client. Sends the prompt as a single
/// user message and returns the first choice's message text. Rate-limit
/// (HTTP 429) and transport failures are retried with exponential backoff
/// (2s, 4s, 8s, 16s between up to 5 attempts) before a typed failure.
class HttpBackend : public CompletionBackend {
public:
    explicit HttpBackend(HttpBackendOptions options);

    /// Reads MAPPERGPT_BASE_URL and MAPPERGPT_API_KEY. Missing base URL is a
    /// Config error.
    static HttpBackend from_env();

    std::string complete(const CompletionRequest& request) override;
    std::string_view name() const override { return "http"; }

private:
    HttpBackendOptions options_;
};

} // namespace mappergpt
