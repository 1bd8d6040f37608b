#pragma once

// Waypoint providers: prompt rendering, response parsing, a chat-completion
// HTTP client with a replayable response cache, and an offline oracle.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "llmastar/env.hpp"
#include "llmastar/error.hpp"

namespace llmastar {

// ---------------------------------------------------------------------------
// Prompts

enum class PromptStyle : std::uint8_t { few_shot, cot, repe };

/// 5 for few-shot, 3 for chain-of-thought and recursive path evaluation.
int default_shots(PromptStyle style) noexcept;
std::string_view style_name(PromptStyle style) noexcept;
/// Accepts "few_shot", "cot", "repe". Throws ConfigError otherwise.
PromptStyle parse_style(std::string_view name);

/// The built-in demonstration block for `style` (one per style).
std::vector<std::string> default_demonstrations(PromptStyle style);

/// Renders the prompt with the built-in demonstrations.
std::string render_prompt(PromptStyle style, const Environment& env, Point start, Point goal);

/// Renders the prompt with up to `shots` of the given demonstration blocks.
std::string render_prompt(PromptStyle style, const Environment& env, Point start, Point goal,
                          std::span<const std::string> demonstrations, int shots);

std::string format_point(Point p);
std::string format_barriers(std::span<const Barrier> barriers);
/// `[[x1, y1], [x2, y2], ...]`
std::string format_path(std::span<const Point> path);

// ---------------------------------------------------------------------------
// Parsing

class ProviderError : public Error {
public:
    explicit ProviderError(const std::string& what) : Error(ErrorCategory::provider, what) {}
};

class ParseError : public ProviderError {
public:
    enum class Kind { marker_missing, malformed_list };

    ParseError(Kind kind, const std::string& what) : ProviderError(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class CacheMissError : public ProviderError {
public:
    explicit CacheMissError(const std::string& what) : ProviderError(what) {}
};

/// Extracts the list following the last "Generated Path:" marker. Real-valued
/// coordinates are rounded half away from zero.
std::vector<Point> parse_path(std::string_view response);

// ---------------------------------------------------------------------------
// HTTP provider

struct ProviderConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string model_name = "gpt-3.5-turbo";
    /// Name of the environment variable holding the bearer token. The token
    /// itself is never stored.
    std::string api_key_env = "OPENAI_API_KEY";
    double temperature = 0.0;
    int max_tokens = 1024;
    int max_retries = 3;
    std::chrono::milliseconds timeout{60'000};
    std::chrono::milliseconds backoff_initial{500};
    std::size_t max_in_flight = 4;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Raw response text keyed by a content hash of (prompt, model, temperature).
/// Reads may run concurrently; writes are serialised.
class ResponseCache {
public:
    ResponseCache() = default;
    explicit ResponseCache(std::filesystem::path storage);
    ResponseCache(ResponseCache&& other) noexcept;
    ResponseCache& operator=(ResponseCache&&) = delete;

    /// Loads `storage` if it exists; otherwise starts empty.
    static ResponseCache open(const std::filesystem::path& storage);

    static std::string key(std::string_view prompt, std::string_view model, double temperature);

    std::optional<std::string> lookup(const std::string& key) const;
    void store(const std::string& key, std::string response);
    std::size_t size() const;
    bool erase(const std::string& key);

    /// Writes the JSON map atomically to the storage path (no-op without one).
    void save() const;
    const std::filesystem::path& storage() const noexcept { return storage_; }

private:
    std::filesystem::path storage_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::string> entries_;
};

struct HttpReply {
    int status = 0;
    std::string body;
};

/// Transport seam for the chat client. Throws ProviderError on connection
/// failure.
class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    virtual HttpReply post(const std::string& url, const std::string& body, const std::string& bearer_token,
                           std::chrono::milliseconds timeout) = 0;
};

std::unique_ptr<ChatTransport> make_http_transport();

/// Chat-completion client: one user message per request, bounded in-flight
/// requests, exponential backoff on transport errors, 429 and 5xx.
class ChatClient {
public:
    explicit ChatClient(ProviderConfig config, std::unique_ptr<ChatTransport> transport = make_http_transport());

    /// Returns the first choice's message content.
    std::string complete(const std::string& prompt);

    const ProviderConfig& config() const noexcept { return config_; }
    /// HTTP requests actually sent, retries included.
    std::uint64_t requests_sent() const noexcept { return requests_sent_.load(); }

private:
    ProviderConfig config_;
    std::unique_ptr<ChatTransport> transport_;
    std::counting_semaphore<64> in_flight_;
    std::atomic<std::uint64_t> requests_sent_{0};
};

enum class CachePolicy : std::uint8_t {
    read_write,  ///< fetch on miss, then store
    cache_only,  ///< CacheMissError on miss; never touches the network
};

/// Raw response for the rendered prompt, from the cache or the network.
std::string fetch_response(ChatClient& client, ResponseCache& cache, const std::string& prompt,
                           CachePolicy policy = CachePolicy::read_write);

/// Renders, fetches (cache first) and parses. Transport, status and parse
/// errors propagate; callers fall back to an empty list.
std::vector<Point> query_waypoints(ChatClient& client, ResponseCache& cache, PromptStyle style,
                                   const Environment& env, Point start, Point goal,
                                   CachePolicy policy = CachePolicy::read_write);
std::vector<Point> query_waypoints(const ProviderConfig& config, ResponseCache& cache, PromptStyle style,
                                   const Environment& env, Point start, Point goal);

// ---------------------------------------------------------------------------
// Offline oracle and the LLM-only baseline

/// [start, n samples at uniform arc-length fractions of the optimal A* path,
/// goal], snapped to path vertices, consecutive duplicates removed. Throws
/// ProviderError when no path exists.
std::vector<Point> oracle_waypoints(const Environment& env, Point start, Point goal, int n);

struct LlmOnlyResult {
    std::vector<Point> path;
    bool valid = false;
};

/// Something that proposes a start-to-goal point sequence for a query.
class WaypointSource {
public:
    virtual ~WaypointSource() = default;
    virtual std::vector<Point> propose(const Environment& env, Point start, Point goal) = 0;
    virtual std::string name() const = 0;
};

class OracleSource final : public WaypointSource {
public:
    explicit OracleSource(int samples) : samples_(samples) {}
    std::vector<Point> propose(const Environment& env, Point start, Point goal) override;
    std::string name() const override;

private:
    int samples_;
};

class LlmSource final : public WaypointSource {
public:
    LlmSource(ChatClient& client, ResponseCache& cache, PromptStyle style, CachePolicy policy,
              std::vector<std::string> demonstrations = {});
    std::vector<Point> propose(const Environment& env, Point start, Point goal) override;
    std::string name() const override;

private:
    ChatClient& client_;
    ResponseCache& cache_;
    PromptStyle style_;
    CachePolicy policy_;
    std::vector<std::string> demonstrations_;
};

/// Takes the proposed sequence as a complete path and checks it with
/// `path_valid`. Provider and parse failures yield an empty, invalid path.
LlmOnlyResult llm_only_path(WaypointSource& source, const Environment& env, Point start, Point goal);
LlmOnlyResult llm_only_path(const ProviderConfig& config, ResponseCache& cache, PromptStyle style,
                            const Environment& env, Point start, Point goal);

}  // namespace llmastar
