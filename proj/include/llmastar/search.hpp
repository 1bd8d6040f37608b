#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "llmastar/env.hpp"

namespace llmastar {

enum class HeuristicKind : std::uint8_t { euclidean, chebyshev };

/// Straight-line distance, or max(|dx|, |dy|).
double heuristic(HeuristicKind kind, Point s, Point goal) noexcept;

/// Instrumentation shared by every search variant.
///
/// `expansions` counts non-stale pops from OPEN, goal pop included.
/// `peak_storage` is the largest |OPEN| + |CLOSED| seen, each lattice state
/// counted once. `pushes` counts insertions of states not already in OPEN.
/// `recomputes` counts OPEN entries whose f was recomputed after a target
/// change; it stays 0 for A* and weighted A*.
struct SearchStats {
    std::uint64_t expansions = 0;
    std::uint64_t peak_storage = 0;
    std::uint64_t recomputes = 0;
    std::uint64_t pushes = 0;

    friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct SearchResult {
    std::optional<std::vector<Point>> path;
    /// g-cost of the goal when found.
    std::optional<double> cost;
    SearchStats stats;
    /// Every counted pop, in order. When a path is found the last entry is the
    /// goal, which is never added to CLOSED.
    std::vector<Point> expansion_order;

    bool found() const noexcept { return path.has_value(); }
    /// States moved to CLOSED, in expansion order.
    std::span<const Point> closed() const noexcept;
};

/// Classical A*, f = g + h. Start and goal must be unblocked (SearchError
/// otherwise). Ties on f prefer larger g, then smaller (x, y).
SearchResult astar(const Environment& env, Point start, Point goal,
                   HeuristicKind h = HeuristicKind::euclidean);

/// Dynamic weighted A*: f = g + w*h with w starting at `w0` and updated to
/// max(1, w*decay) after every expansion. Requires w0 >= 1 and 0 < decay <= 1.
SearchResult weighted_astar(const Environment& env, Point start, Point goal, HeuristicKind h,
                            double w0, double decay);

/// Follows `parents` back from `end` to a state with no parent and returns the
/// chain in forward order. Throws SearchError if the chain is longer than the
/// map allows (a cycle).
std::vector<Point> reconstruct_path(const std::unordered_map<Point, Point>& parents, Point end);

}  // namespace llmastar
