#include "llmastar/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "llmastar/error.hpp"
#include "search_core.hpp"

namespace llmastar {

namespace detail {

void require_free_endpoints(const Environment& env, Point start, Point goal) {
    if (env.point_blocked(start)) throw SearchError("start point is blocked or out of bounds");
    if (env.point_blocked(goal)) throw SearchError("goal point is blocked or out of bounds");
}

}  // namespace detail

namespace {

// Shared best-first loop for A* and weighted A*. `weight` is read when a
// neighbour is relaxed and updated through `after_expansion`.
template <typename AfterExpansion>
SearchResult best_first(const Environment& env, Point start, Point goal, HeuristicKind kind, double& weight,
                        AfterExpansion&& after_expansion) {
    detail::require_free_endpoints(env, start, goal);
    detail::SearchCore core(env);
    core.relax(start, std::nullopt, 0.0, weight * heuristic(kind, start, goal));
    while (const auto current = core.pop()) {
        if (*current == goal) return core.finish(goal);
        core.close(*current);
        const double g_current = core.g(*current);
        for (const Step& step : env.neighbors(*current)) {
            if (core.state(step.to) == detail::NodeState::closed) continue;
            const double tentative = g_current + step.cost;
            if (core.state(step.to) != detail::NodeState::open || tentative < core.g(step.to)) {
                core.relax(step.to, *current, tentative, tentative + weight * heuristic(kind, step.to, goal));
            }
        }
        after_expansion();
    }
    return core.finish(std::nullopt);
}

}  // namespace

double heuristic(HeuristicKind kind, Point s, Point goal) noexcept {
    switch (kind) {
        case HeuristicKind::chebyshev:
            return static_cast<double>(std::max(std::llabs(s.x - goal.x), std::llabs(s.y - goal.y)));
        case HeuristicKind::euclidean:
        default:
            return euclidean(s, goal);
    }
}

std::span<const Point> SearchResult::closed() const noexcept {
    std::span<const Point> all(expansion_order);
    return found() ? all.first(all.size() - 1) : all;
}

SearchResult astar(const Environment& env, Point start, Point goal, HeuristicKind h) {
    detail::require_free_endpoints(env, start, goal);
    detail::SearchCore core(env);
    core.relax(start, std::nullopt, 0.0, heuristic(h, start, goal));
    while (const auto current = core.pop()) {
        if (*current == goal) return core.finish(goal);
        core.close(*current);
        const double g_current = core.g(*current);
        for (const Step& step : env.neighbors(*current)) {
            if (core.state(step.to) == detail::NodeState::closed) continue;
            const double tentative = g_current + step.cost;
            if (core.state(step.to) != detail::NodeState::open || tentative < core.g(step.to)) {
                core.relax(step.to, *current, tentative, tentative + heuristic(h, step.to, goal));
            }
        }
    }
    return core.finish(std::nullopt);
}

SearchResult weighted_astar(const Environment& env, Point start, Point goal, HeuristicKind h, double w0,
                            double decay) {
    if (!(w0 >= 1.0) || !std::isfinite(w0)) throw ConfigError("weighted A* requires w0 >= 1");
    if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("weighted A* requires 0 < decay <= 1");
    double weight = w0;
    return best_first(env, start, goal, h, weight, [&] { weight = std::max(1.0, weight * decay); });
}

std::vector<Point> reconstruct_path(const std::unordered_map<Point, Point>& parents, Point end) {
    std::vector<Point> path{end};
    // A simple chain visits each parent at most once.
    const std::size_t bound = parents.size() + 1;
    Point current = end;
    for (auto it = parents.find(current); it != parents.end(); it = parents.find(current)) {
        current = it->second;
        path.push_back(current);
        if (path.size() > bound) {
            throw SearchError("malformed parent chain: cycle reached from (" + std::to_string(end.x) + ", " +
                              std::to_string(end.y) + ")");
        }
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace llmastar
