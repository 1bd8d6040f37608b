#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "llmastar/env.hpp"
#include "llmastar/search.hpp"

namespace llmastar {

/// Ordered waypoints guiding the search, plus the index of the current target.
///
/// Invariants (established by `sanitize_targets`): the first waypoint is the
/// start, the last is the goal, none is blocked, and no two consecutive
/// waypoints are equal.
class TargetList {
public:
    TargetList(std::vector<Point> waypoints, std::size_t cursor);

    const std::vector<Point>& waypoints() const noexcept { return waypoints_; }
    std::size_t cursor() const noexcept { return cursor_; }
    Point current() const noexcept { return waypoints_[cursor_]; }
    Point goal() const noexcept { return waypoints_.back(); }

    /// Moves to the next waypoint; stays on the goal once reached.
    void advance() noexcept;

    friend bool operator==(const TargetList&, const TargetList&) = default;

private:
    std::vector<Point> waypoints_;
    std::size_t cursor_;
};

/// Repairs raw provider output into a usable target list: clamps each point
/// into the bounds, drops blocked points, adds missing start/goal, collapses
/// consecutive duplicates and places the cursor after the start.
TargetList sanitize_targets(const Environment& env, std::span<const Point> raw, Point start, Point goal);

/// g + h + distance-to-target. Throws SearchError on non-finite or negative
/// inputs. Evaluated as g + (h + d) so that with the goal as target and a
/// Euclidean h the result is bit-identical to g + 2h.
double current_f(double g_cost, double h_value, double dist_to_target);

struct GuidedSearchOptions {
    /// After every target change, re-derive each OPEN entry's f independently
    /// and throw SearchError on any mismatch.
    bool verify_recompute = false;
};

/// A* guided by a target list. When a generated neighbour equals the current
/// target (and that target is not the goal) the target advances and every
/// OPEN entry's f is recomputed against the new target. The returned path is
/// always valid but may be longer than optimal.
SearchResult llm_astar_search(const Environment& env, Point start, Point goal, TargetList targets,
                              HeuristicKind h = HeuristicKind::euclidean, GuidedSearchOptions options = {});

}  // namespace llmastar
