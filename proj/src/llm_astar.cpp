#include "llmastar/llm_astar.hpp"

#include <algorithm>
#include <cmath>

#include "llmastar/error.hpp"
#include "search_core.hpp"

namespace llmastar {

TargetList::TargetList(std::vector<Point> waypoints, std::size_t cursor)
    : waypoints_(std::move(waypoints)), cursor_(cursor) {
    if (waypoints_.empty()) throw SearchError("target list must contain at least the goal");
    if (cursor_ >= waypoints_.size()) throw SearchError("target cursor out of range");
}

void TargetList::advance() noexcept {
    if (cursor_ + 1 < waypoints_.size()) ++cursor_;
}

TargetList sanitize_targets(const Environment& env, std::span<const Point> raw, Point start, Point goal) {
    detail::require_free_endpoints(env, start, goal);
    std::vector<Point> kept;
    kept.reserve(raw.size() + 2);
    for (Point p : raw) {
        const Point clamped{std::clamp(p.x, env.x_range().lo, env.x_range().hi),
                            std::clamp(p.y, env.y_range().lo, env.y_range().hi)};
        if (!env.point_blocked(clamped)) kept.push_back(clamped);
    }
    if (kept.empty() || kept.front() != start) kept.insert(kept.begin(), start);
    if (kept.back() != goal) kept.push_back(goal);
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    std::size_t cursor = 0;
    while (cursor + 1 < kept.size() && kept[cursor] == start) ++cursor;
    return TargetList(std::move(kept), cursor);
}

double current_f(double g_cost, double h_value, double dist_to_target) {
    for (double v : {g_cost, h_value, dist_to_target}) {
        if (!std::isfinite(v) || v < 0.0) throw SearchError("f-cost terms must be finite and non-negative");
    }
    return g_cost + (h_value + dist_to_target);
}

SearchResult llm_astar_search(const Environment& env, Point start, Point goal, TargetList targets,
                              HeuristicKind h, GuidedSearchOptions options) {
    detail::require_free_endpoints(env, start, goal);
    if (targets.goal() != goal) throw SearchError("target list must end at the goal");

    detail::SearchCore core(env);
    Point target = targets.current();
    auto priority = [&](Point p, double g) { return current_f(g, heuristic(h, p, goal), euclidean(target, p)); };

    core.relax(start, std::nullopt, 0.0, priority(start, 0.0));
    while (const auto current = core.pop()) {
        if (*current == goal) return core.finish(goal);
        core.close(*current);
        const double g_current = core.g(*current);
        for (const Step& step : env.neighbors(*current)) {
            // The target check precedes the CLOSED skip, so an already-closed
            // neighbour can still advance the target.
            if (step.to == target && target != goal) {
                targets.advance();
                target = targets.current();
                core.stats().recomputes += core.rebuild(priority);
                if (options.verify_recompute) {
                    for (const detail::OpenEntry& e : core.open_entries()) {
                        const double expected = e.g + heuristic(h, e.p, goal) + euclidean(target, e.p);
                        if (!core.live(e) || std::abs(e.f - expected) > 1e-9 * std::max(1.0, expected)) {
                            throw SearchError("OPEN entry holds a stale f after target change");
                        }
                    }
                }
            }
            if (core.state(step.to) == detail::NodeState::closed) continue;
            const double tentative = g_current + step.cost;
            if (core.state(step.to) != detail::NodeState::open || tentative < core.g(step.to)) {
                core.relax(step.to, *current, tentative, priority(step.to, tentative));
            }
        }
    }
    return core.finish(std::nullopt);
}

}  // namespace llmastar
