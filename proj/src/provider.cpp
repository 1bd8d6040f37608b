#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "httplib.h"
#include "json.hpp"
#include "llmastar/search.hpp"
#include "llmastar/waypoints.hpp"

namespace llmastar {

namespace {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCategory::internal, "SHA-256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0x0f]);
    }
    return out;
}

class HttplibTransport final : public ChatTransport {
public:
    HttpReply post(const std::string& url, const std::string& body, const std::string& bearer_token,
                   std::chrono::milliseconds timeout) override {
        const std::size_t scheme_end = url.find("://");
        const std::size_t path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
        const std::string origin = url.substr(0, path_start);
        const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

        httplib::Client client(origin);
        const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
        const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
        client.set_connection_timeout(seconds.count(), micros.count());
        client.set_read_timeout(seconds.count(), micros.count());
        client.set_write_timeout(seconds.count(), micros.count());

        httplib::Headers headers;
        if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
        auto result = client.Post(path, headers, body, "application/json");
        if (!result) {
            throw ProviderError("transport error contacting " + origin + ": " + httplib::to_string(result.error()));
        }
        return {result->status, result->body};
    }
};

struct InFlightSlot {
    explicit InFlightSlot(std::counting_semaphore<64>& s) : sem(s) { sem.acquire(); }
    ~InFlightSlot() { sem.release(); }
    InFlightSlot(const InFlightSlot&) = delete;
    InFlightSlot& operator=(const InFlightSlot&) = delete;
    std::counting_semaphore<64>& sem;
};

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

// ---------------------------------------------------------------------------
// Config and cache

void ProviderConfig::validate() const {
    if (base_url.empty()) throw ConfigError("provider base_url is empty");
    if (model_name.empty()) throw ConfigError("provider model_name is empty");
    if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
    if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
    if (max_tokens <= 0) throw ConfigError("max_tokens must be positive");
    if (max_in_flight == 0 || max_in_flight > 64) throw ConfigError("max_in_flight must be in [1, 64]");
    if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
}

ResponseCache::ResponseCache(std::filesystem::path storage) : storage_(std::move(storage)) {}

ResponseCache::ResponseCache(ResponseCache&& other) noexcept {
    std::unique_lock lock(other.mutex_);
    storage_ = std::move(other.storage_);
    entries_ = std::move(other.entries_);
}

ResponseCache ResponseCache::open(const std::filesystem::path& storage) {
    ResponseCache cache(storage);
    std::ifstream in(storage);
    if (!in) return cache;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(storage.string(), std::string("cache file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError(storage.string(), "cache file must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_string()) throw SchemaError(storage.string() + "." + key, "expected a string");
        cache.entries_.emplace(key, value.get<std::string>());
    }
    return cache;
}

std::string ResponseCache::key(std::string_view prompt, std::string_view model, double temperature) {
    char temp[32];
    std::snprintf(temp, sizeof temp, "%.17g", temperature);
    std::string material;
    material.reserve(prompt.size() + model.size() + 40);
    material.append(prompt).push_back('\x1f');
    material.append(model).push_back('\x1f');
    material.append(temp);
    return sha256_hex(material);
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
    std::shared_lock lock(mutex_);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::store(const std::string& key, std::string response) {
    std::unique_lock lock(mutex_);
    entries_.insert_or_assign(key, std::move(response));
}

std::size_t ResponseCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

bool ResponseCache::erase(const std::string& key) {
    std::unique_lock lock(mutex_);
    return entries_.erase(key) > 0;
}

void ResponseCache::save() const {
    if (storage_.empty()) return;
    nlohmann::json j = nlohmann::json::object();
    {
        std::shared_lock lock(mutex_);
        for (const auto& [key, value] : entries_) j[key] = value;
    }
    const std::filesystem::path tmp = storage_.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write cache file " + tmp.string());
        out << j.dump(2) << '\n';
        if (!out) throw IoError("failed writing cache file " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, storage_, ec);
    if (ec) throw IoError("cannot replace cache file " + storage_.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Client

std::unique_ptr<ChatTransport> make_http_transport() { return std::make_unique<HttplibTransport>(); }

ChatClient::ChatClient(ProviderConfig config, std::unique_ptr<ChatTransport> transport)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      in_flight_(static_cast<std::ptrdiff_t>((config_.validate(), config_.max_in_flight))) {
    if (!transport_) throw ConfigError("chat client needs a transport");
}

std::string ChatClient::complete(const std::string& prompt) {
    const nlohmann::json request = {
        {"model", config_.model_name},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"temperature", config_.temperature},
        {"max_tokens", config_.max_tokens},
    };
    const std::string body = request.dump();
    std::string url = config_.base_url;
    while (!url.empty() && url.back() == '/') url.pop_back();
    url += "/chat/completions";
    const char* token = config_.api_key_env.empty() ? nullptr : std::getenv(config_.api_key_env.c_str());

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(config_.backoff_initial * (1LL << std::min(attempt - 1, 20)));
        HttpReply reply;
        try {
            InFlightSlot slot(in_flight_);
            ++requests_sent_;
            reply = transport_->post(url, body, token ? token : "", config_.timeout);
        } catch (const ProviderError& e) {
            last_error = e.what();
            continue;
        }
        if (reply.status >= 200 && reply.status < 300) {
            nlohmann::json parsed = nlohmann::json::parse(reply.body, nullptr, false);
            if (parsed.is_discarded()) throw ProviderError("provider response is not JSON");
            try {
                return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const nlohmann::json::exception&) {
                throw ProviderError("provider response lacks choices[0].message.content");
            }
        }
        last_error = "HTTP status " + std::to_string(reply.status);
        if (!retryable_status(reply.status)) throw ProviderError("provider returned " + last_error);
    }
    throw ProviderError("provider request failed after " + std::to_string(config_.max_retries + 1) +
                        " attempts: " + last_error);
}

std::string fetch_response(ChatClient& client, ResponseCache& cache, const std::string& prompt, CachePolicy policy) {
    const std::string key = ResponseCache::key(prompt, client.config().model_name, client.config().temperature);
    if (auto hit = cache.lookup(key)) return *hit;
    if (policy == CachePolicy::cache_only) throw CacheMissError("no cached response for prompt " + key);
    std::string text = client.complete(prompt);
    cache.store(key, text);
    return text;
}

std::vector<Point> query_waypoints(ChatClient& client, ResponseCache& cache, PromptStyle style,
                                   const Environment& env, Point start, Point goal, CachePolicy policy) {
    return parse_path(fetch_response(client, cache, render_prompt(style, env, start, goal), policy));
}

std::vector<Point> query_waypoints(const ProviderConfig& config, ResponseCache& cache, PromptStyle style,
                                   const Environment& env, Point start, Point goal) {
    ChatClient client(config);
    return query_waypoints(client, cache, style, env, start, goal);
}

// ---------------------------------------------------------------------------
// Oracle, sources and the LLM-only baseline

std::vector<Point> oracle_waypoints(const Environment& env, Point start, Point goal, int n) {
    if (n < 0) throw ConfigError("oracle sample count must be >= 0");
    const SearchResult optimal = astar(env, start, goal, HeuristicKind::euclidean);
    if (!optimal.found()) throw ProviderError("oracle: no path between start and goal");
    const std::vector<Point>& path = *optimal.path;

    std::vector<double> arc(path.size(), 0.0);
    for (std::size_t i = 1; i < path.size(); ++i) arc[i] = arc[i - 1] + euclidean(path[i - 1], path[i]);

    std::vector<Point> out{start};
    for (int i = 1; i <= n; ++i) {
        const double wanted = arc.back() * static_cast<double>(i) / static_cast<double>(n + 1);
        auto it = std::lower_bound(arc.begin(), arc.end(), wanted);
        std::size_t idx = static_cast<std::size_t>(it - arc.begin());
        if (idx == arc.size()) idx = arc.size() - 1;
        if (idx > 0 && wanted - arc[idx - 1] <= arc[idx] - wanted) --idx;
        out.push_back(path[idx]);
    }
    out.push_back(goal);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Point> OracleSource::propose(const Environment& env, Point start, Point goal) {
    return oracle_waypoints(env, start, goal, samples_);
}

std::string OracleSource::name() const { return "oracle:" + std::to_string(samples_); }

LlmSource::LlmSource(ChatClient& client, ResponseCache& cache, PromptStyle style, CachePolicy policy,
                     std::vector<std::string> demonstrations)
    : client_(client),
      cache_(cache),
      style_(style),
      policy_(policy),
      demonstrations_(demonstrations.empty() ? default_demonstrations(style) : std::move(demonstrations)) {}

std::vector<Point> LlmSource::propose(const Environment& env, Point start, Point goal) {
    const std::string prompt = render_prompt(style_, env, start, goal, demonstrations_, default_shots(style_));
    return parse_path(fetch_response(client_, cache_, prompt, policy_));
}

std::string LlmSource::name() const { return client_.config().model_name + "/" + std::string(style_name(style_)); }

LlmOnlyResult llm_only_path(WaypointSource& source, const Environment& env, Point start, Point goal) {
    LlmOnlyResult result;
    try {
        result.path = source.propose(env, start, goal);
    } catch (const CacheMissError&) {
        throw;
    } catch (const ProviderError&) {
        return result;
    }
    result.valid = path_valid(env, result.path, start, goal);
    return result;
}

LlmOnlyResult llm_only_path(const ProviderConfig& config, ResponseCache& cache, PromptStyle style,
                            const Environment& env, Point start, Point goal) {
    ChatClient client(config);
    LlmSource source(client, cache, style, CachePolicy::read_write);
    return llm_only_path(source, env, start, goal);
}

}  // namespace llmastar
