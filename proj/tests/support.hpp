#pragma once

// Shared fixtures for the unit and acceptance tests: independent oracles,
// random map builders and a local chat-completions server.

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "llmastar/env.hpp"
#include "llmastar/rng.hpp"

namespace testsupport {

using llmastar::Barrier;
using llmastar::Environment;
using llmastar::Point;

// Plain Dijkstra over the lattice, with its own move rules: a move is legal
// when no sampled point along it touches a barrier (1/64 steps are exact for
// axis-aligned barriers on integer coordinates, since a diagonal crosses a
// grid line only at lattice points or half-integer points).
inline bool touches(const Barrier& b, double x, double y) {
    constexpr double eps = 1e-12;
    if (b.orientation == llmastar::Orientation::horizontal) {
        return std::abs(y - static_cast<double>(b.fixed)) < eps && x >= static_cast<double>(b.span_lo) - eps &&
               x <= static_cast<double>(b.span_hi) + eps;
    }
    return std::abs(x - static_cast<double>(b.fixed)) < eps && y >= static_cast<double>(b.span_lo) - eps &&
           y <= static_cast<double>(b.span_hi) + eps;
}

inline bool oracle_move_ok(const Environment& env, Point a, Point b) {
    if (b.x < env.x_range().lo || b.x > env.x_range().hi || b.y < env.y_range().lo || b.y > env.y_range().hi) {
        return false;
    }
    for (int i = 0; i <= 64; ++i) {
        const double t = i / 64.0;
        const double x = static_cast<double>(a.x) + t * static_cast<double>(b.x - a.x);
        const double y = static_cast<double>(a.y) + t * static_cast<double>(b.y - a.y);
        for (const Barrier& bar : env.h_barriers()) {
            if (touches(bar, x, y)) return false;
        }
        for (const Barrier& bar : env.v_barriers()) {
            if (touches(bar, x, y)) return false;
        }
    }
    return true;
}

// Returns the optimal cost, or a negative value when the goal is unreachable.
inline double ucs_cost(const Environment& env, Point s, Point g) {
    if (!oracle_move_ok(env, s, s) || !oracle_move_ok(env, g, g)) return -1.0;
    std::map<Point, double> dist;
    using Item = std::pair<double, Point>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    dist[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
        auto [d, p] = pq.top();
        pq.pop();
        if (d > dist[p]) continue;
        if (p == g) return d;
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                const Point q{p.x + dx, p.y + dy};
                if (!oracle_move_ok(env, p, q)) continue;
                const double nd = d + ((dx != 0 && dy != 0) ? std::sqrt(2.0) : 1.0);
                auto it = dist.find(q);
                if (it == dist.end() || nd < it->second) {
                    dist[q] = nd;
                    pq.push({nd, q});
                }
            }
        }
    }
    return -1.0;
}

// Random map with w x h bounds and a barrier count drawn from [nb_lo, nb_hi].
inline Environment random_env(llmastar::Rng& rng, llmastar::Coord w, llmastar::Coord h, int nb_lo, int nb_hi) {
    std::vector<Barrier> hs;
    std::vector<Barrier> vs;
    const auto n = rng.uniform(nb_lo, nb_hi);
    for (int i = 0; i < n; ++i) {
        if (rng.uniform(0, 1) == 0) {
            const auto y = rng.uniform(1, h - 1);
            const auto a = rng.uniform(0, w);
            const auto b = rng.uniform(0, w);
            hs.push_back(Barrier::horizontal(y, a, b));
        } else {
            const auto x = rng.uniform(1, w - 1);
            const auto a = rng.uniform(0, h);
            const auto b = rng.uniform(0, h);
            vs.push_back(Barrier::vertical(x, a, b));
        }
    }
    return Environment({0, w}, {0, h}, std::move(hs), std::move(vs));
}

inline Point random_free_point(llmastar::Rng& rng, const Environment& env) {
    for (;;) {
        const Point p{rng.uniform(env.x_range().lo, env.x_range().hi), rng.uniform(env.y_range().lo, env.y_range().hi)};
        if (!env.point_blocked(p)) return p;
    }
}

// The map from the prompt demonstration.
inline Environment demo_env() {
    return Environment({0, 50}, {0, 30}, {Barrier::horizontal(10, 0, 25), Barrier::horizontal(15, 30, 50)},
                       {Barrier::vertical(25, 10, 22)});
}

// Is the rational point (num_x/den, num_y/den) on the closed segment pq?
inline bool on_segment_exact(Point p, Point q, __int128 num_x, __int128 num_y, __int128 den) {
    const __int128 cross = (static_cast<__int128>(q.x - p.x)) * (num_y - p.y * den) -
                           (static_cast<__int128>(q.y - p.y)) * (num_x - p.x * den);
    if (cross != 0) return false;
    const auto lo_x = std::min(p.x, q.x), hi_x = std::max(p.x, q.x);
    const auto lo_y = std::min(p.y, q.y), hi_y = std::max(p.y, q.y);
    return num_x >= lo_x * den && num_x <= hi_x * den && num_y >= lo_y * den && num_y <= hi_y * den;
}

// Segment intersection oracle. Non-parallel pairs: the single crossing point
// of the carrier lines is solved in rationals and tested against both
// segments. Parallel pairs: one segment is sampled at every half-lattice step
// (which hits any shared integer or half-integer point) and each sample is
// tested against the other.
inline bool dense_intersect(Point a, Point b, Point c, Point d) {
    const __int128 rx = b.x - a.x, ry = b.y - a.y, sx = d.x - c.x, sy = d.y - c.y;
    const __int128 den = rx * sy - ry * sx;
    if (den != 0) {
        const __int128 qx = c.x - a.x, qy = c.y - a.y;
        const __int128 tn = qx * sy - qy * sx;
        __int128 dd = den;
        __int128 t = tn;
        if (dd < 0) {
            dd = -dd;
            t = -t;
        }
        if (t < 0 || t > dd) return false;
        const __int128 px = a.x * dd + t * rx;
        const __int128 py = a.y * dd + t * ry;
        return on_segment_exact(c, d, px, py, dd);
    }
    auto sample = [](Point p, Point q, Point u, Point v) {
        const __int128 n = std::max<__int128>(1, std::max(std::llabs(q.x - p.x), std::llabs(q.y - p.y))) * 2;
        for (__int128 i = 0; i <= n; ++i) {
            const __int128 nx = p.x * n + i * (q.x - p.x);
            const __int128 ny = p.y * n + i * (q.y - p.y);
            if (on_segment_exact(u, v, nx, ny, n)) return true;
        }
        return false;
    };
    return sample(a, b, c, d) || sample(c, d, a, b);
}

// Local stand-in for a chat-completions endpoint. Each request's prompt is
// answered by `answer`; `fail_first` requests get HTTP 503 first.
class FixtureServer {
public:
    explicit FixtureServer(std::function<std::string(const std::string&)> answer, int fail_first = 0)
        : answer_(std::move(answer)), fail_remaining_(fail_first) {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            ++requests_;
            last_auth_ = req.get_header_value("Authorization");
            if (fail_remaining_.fetch_sub(1) > 0) {
                res.status = 503;
                res.set_content("busy", "text/plain");
                return;
            }
            const auto body = nlohmann::json::parse(req.body);
            last_request_ = body;
            const std::string prompt = body.at("messages").at(0).at("content").get<std::string>();
            nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", answer_(prompt)}}}}}}};
            res.set_content(reply.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    FixtureServer(const FixtureServer&) = delete;
    FixtureServer& operator=(const FixtureServer&) = delete;
    ~FixtureServer() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
    int requests() const { return requests_.load(); }
    nlohmann::json last_request() const { return last_request_; }
    std::string last_auth() const { return last_auth_; }

private:
    httplib::Server server_;
    std::function<std::string(const std::string&)> answer_;
    std::atomic<int> fail_remaining_;
    std::atomic<int> requests_{0};
    nlohmann::json last_request_;
    std::string last_auth_;
    int port_ = 0;
    std::thread thread_;
};

// Replies with a path from the query's start to its goal via their midpoint.
inline std::string midpoint_answer(const std::string& prompt) {
    auto grab = [&](const std::string& marker) {
        const auto at = prompt.rfind(marker);
        const auto open = prompt.find('[', at);
        const auto close = prompt.find(']', open);
        return prompt.substr(open, close - open + 1);
    };
    const auto s = nlohmann::json::parse(grab("Start Point: "));
    const auto g = nlohmann::json::parse(grab("Goal Point: "));
    const long long mx = (s[0].get<long long>() + g[0].get<long long>()) / 2;
    const long long my = (s[1].get<long long>() + g[1].get<long long>()) / 2;
    return "Thought: go straight.\nGenerated Path: [" + s.dump() + ", [" + std::to_string(mx) + ", " +
           std::to_string(my) + "], " + g.dump() + "]";
}

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() /
               (name + "-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testsupport
