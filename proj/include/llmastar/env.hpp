#pragma once

// Continuous 2D environment with axis-aligned segment barriers, discretised
// onto an 8-connected integer lattice. All geometry is exact integer
// arithmetic; no epsilons anywhere.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "llmastar/error.hpp"

namespace llmastar {

using Json = nlohmann::ordered_json;
using Coord = std::int64_t;

struct Point {
    Coord x = 0;
    Coord y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

enum class Orientation : std::uint8_t { horizontal, vertical };

/// A closed, zero-thickness segment. `fixed` is the y of a horizontal barrier
/// or the x of a vertical one; the span runs along the other axis.
struct Barrier {
    Orientation orientation = Orientation::horizontal;
    Coord fixed = 0;
    Coord span_lo = 0;
    Coord span_hi = 0;

    /// `[y, x_start, x_end]`; endpoints may come in either order.
    static Barrier horizontal(Coord y, Coord x_start, Coord x_end);
    /// `[x, y_start, y_end]`; endpoints may come in either order.
    static Barrier vertical(Coord x, Coord y_start, Coord y_end);

    Point first() const;
    Point second() const;
    bool contains(Point p) const;

    friend constexpr bool operator==(const Barrier&, const Barrier&) = default;
};

struct Range {
    Coord lo = 0;
    Coord hi = 0;

    friend constexpr bool operator==(const Range&, const Range&) = default;
};

/// One lattice move produced by `Environment::neighbors`.
struct Step {
    Point to;
    double cost = 1.0;
};

/// Immutable after construction; safe to share between threads.
class Environment {
public:
    /// Throws SchemaError when a range is empty or a barrier leaves the bounds.
    Environment(Range x_range, Range y_range, std::vector<Barrier> h_barriers,
                std::vector<Barrier> v_barriers);

    const Range& x_range() const noexcept { return x_range_; }
    const Range& y_range() const noexcept { return y_range_; }
    const std::vector<Barrier>& h_barriers() const noexcept { return h_barriers_; }
    const std::vector<Barrier>& v_barriers() const noexcept { return v_barriers_; }

    bool in_bounds(Point p) const noexcept;

    /// Outside the bounds, or exactly on some barrier.
    bool point_blocked(Point p) const noexcept;

    /// Both endpoints free and the closed segment `a`-`b` touches no barrier.
    bool move_valid(Point a, Point b) const noexcept;

    /// Valid 8-connected moves from `p`, in the fixed order
    /// E, NE, N, NW, W, SW, S, SE. Costs are 1 (axis) and sqrt(2) (diagonal).
    std::vector<Step> neighbors(Point p) const;

    /// Number of lattice points inside the bounds.
    std::size_t lattice_size() const noexcept;

    friend bool operator==(const Environment&, const Environment&) = default;

private:
    Range x_range_;
    Range y_range_;
    std::vector<Barrier> h_barriers_;
    std::vector<Barrier> v_barriers_;
};

/// True iff the closed segments p1-p2 and q1-q2 share a point. Zero-length
/// segments are allowed. Exact for |coordinate| <= 2^30.
bool segments_intersect(Point p1, Point p2, Point q1, Point q2) noexcept;

bool point_blocked(const Environment& env, Point p) noexcept;
bool move_valid(const Environment& env, Point a, Point b) noexcept;

/// Nonempty, starts at `start`, ends at `goal`, and every consecutive segment
/// passes `move_valid`. Segments may be arbitrarily long.
bool path_valid(const Environment& env, std::span<const Point> path, Point start, Point goal);

/// Sum of Euclidean segment lengths; 0 for a single point.
double path_length(std::span<const Point> path);

double euclidean(Point a, Point b) noexcept;

/// Multiplies every bound and barrier coordinate by `k` (k >= 1).
Environment scale_environment(const Environment& env, Coord k);
Point scale_point(Point p, Coord k) noexcept;

// JSON in the dataset field layout:
// {"x_range":[lo,hi],"y_range":[lo,hi],"horizontal_barriers":[[y,x0,x1],...],
//  "vertical_barriers":[[x,y0,y1],...]}
// `path` prefixes field names in SchemaError messages.
Json point_to_json(Point p);
Point point_from_json(const Json& j, const std::string& path);
Json environment_to_json(const Environment& env);
/// Fills `out` with the four environment fields (other keys untouched).
void write_environment_fields(const Environment& env, Json& out);
Environment environment_from_json(const Json& j, const std::string& path = "");

}  // namespace llmastar

template <>
struct std::hash<llmastar::Point> {
    std::size_t operator()(const llmastar::Point& p) const noexcept {
        const auto hx = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ull;
        return static_cast<std::size_t>(hx ^ (static_cast<std::uint64_t>(p.y) + 0x7F4A7C159E3779B9ull +
                                              (hx << 6) + (hx >> 2)));
    }
};
