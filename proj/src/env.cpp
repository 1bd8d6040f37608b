#include "llmastar/env.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "llmastar/error.hpp"

namespace llmastar {

namespace {

__extension__ typedef __int128 Wide;

int orientation(Point a, Point b, Point c) noexcept {
    const Wide cross = Wide(b.x - a.x) * Wide(c.y - a.y) - Wide(b.y - a.y) * Wide(c.x - a.x);
    return (cross > 0) - (cross < 0);
}

// c is known collinear with a-b; test whether it lies within their bounding box.
bool within_box(Point a, Point b, Point c) noexcept {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
}

bool in_range(Range r, Coord v) noexcept { return r.lo <= v && v <= r.hi; }

constexpr double kSqrt2 = 1.41421356237309504880;

struct Direction {
    Coord dx;
    Coord dy;
    double cost;
};

// Counterclockwise from East.
constexpr std::array<Direction, 8> kDirections{{
    {1, 0, 1.0},
    {1, 1, kSqrt2},
    {0, 1, 1.0},
    {-1, 1, kSqrt2},
    {-1, 0, 1.0},
    {-1, -1, kSqrt2},
    {0, -1, 1.0},
    {1, -1, kSqrt2},
}};

std::string join_path(const std::string& prefix, const std::string& field) {
    return prefix.empty() ? field : prefix + "." + field;
}

Coord int_field(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<Coord>();
}

Range range_from_json(const Json& obj, const std::string& prefix, const char* name) {
    const std::string path = join_path(prefix, name);
    if (!obj.contains(name)) throw SchemaError(path, "missing field");
    const Json& r = obj.at(name);
    if (!r.is_array() || r.size() != 2) throw SchemaError(path, "expected [min, max]");
    return {int_field(r[0], path + "[0]"), int_field(r[1], path + "[1]")};
}

std::vector<Barrier> barriers_from_json(const Json& obj, const std::string& prefix, const char* name,
                                        Orientation orientation) {
    const std::string path = join_path(prefix, name);
    if (!obj.contains(name)) throw SchemaError(path, "missing field");
    const Json& list = obj.at(name);
    if (!list.is_array()) throw SchemaError(path, "expected an array");
    std::vector<Barrier> out;
    out.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string item = path + "[" + std::to_string(i) + "]";
        const Json& b = list[i];
        if (!b.is_array() || b.size() != 3) throw SchemaError(item, "expected a 3-element barrier");
        const Coord fixed = int_field(b[0], item + "[0]");
        const Coord lo = int_field(b[1], item + "[1]");
        const Coord hi = int_field(b[2], item + "[2]");
        out.push_back(orientation == Orientation::horizontal ? Barrier::horizontal(fixed, lo, hi)
                                                             : Barrier::vertical(fixed, lo, hi));
    }
    return out;
}

}  // namespace

Barrier Barrier::horizontal(Coord y, Coord x_start, Coord x_end) {
    return {Orientation::horizontal, y, std::min(x_start, x_end), std::max(x_start, x_end)};
}

Barrier Barrier::vertical(Coord x, Coord y_start, Coord y_end) {
    return {Orientation::vertical, x, std::min(y_start, y_end), std::max(y_start, y_end)};
}

Point Barrier::first() const {
    return orientation == Orientation::horizontal ? Point{span_lo, fixed} : Point{fixed, span_lo};
}

Point Barrier::second() const {
    return orientation == Orientation::horizontal ? Point{span_hi, fixed} : Point{fixed, span_hi};
}

bool Barrier::contains(Point p) const {
    if (orientation == Orientation::horizontal) {
        return p.y == fixed && span_lo <= p.x && p.x <= span_hi;
    }
    return p.x == fixed && span_lo <= p.y && p.y <= span_hi;
}

Environment::Environment(Range x_range, Range y_range, std::vector<Barrier> h_barriers,
                         std::vector<Barrier> v_barriers)
    : x_range_(x_range),
      y_range_(y_range),
      h_barriers_(std::move(h_barriers)),
      v_barriers_(std::move(v_barriers)) {
    if (x_range_.lo >= x_range_.hi) throw SchemaError("x_range", "requires x_min < x_max");
    if (y_range_.lo >= y_range_.hi) throw SchemaError("y_range", "requires y_min < y_max");
    auto check = [this](const std::vector<Barrier>& list, Orientation expected, const char* name) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Barrier& b = list[i];
            const std::string path = std::string(name) + "[" + std::to_string(i) + "]";
            if (b.orientation != expected) throw SchemaError(path, "wrong orientation");
            if (b.span_lo > b.span_hi) throw SchemaError(path, "span not normalised");
            if (!in_bounds(b.first()) || !in_bounds(b.second())) {
                throw SchemaError(path, "barrier leaves the environment bounds");
            }
        }
    };
    check(h_barriers_, Orientation::horizontal, "horizontal_barriers");
    check(v_barriers_, Orientation::vertical, "vertical_barriers");
}

bool Environment::in_bounds(Point p) const noexcept {
    return in_range(x_range_, p.x) && in_range(y_range_, p.y);
}

bool Environment::point_blocked(Point p) const noexcept {
    if (!in_bounds(p)) return true;
    for (const Barrier& b : h_barriers_) {
        if (b.contains(p)) return true;
    }
    for (const Barrier& b : v_barriers_) {
        if (b.contains(p)) return true;
    }
    return false;
}

bool Environment::move_valid(Point a, Point b) const noexcept {
    if (point_blocked(a) || point_blocked(b)) return false;
    for (const auto* list : {&h_barriers_, &v_barriers_}) {
        for (const Barrier& bar : *list) {
            if (segments_intersect(a, b, bar.first(), bar.second())) return false;
        }
    }
    return true;
}

std::vector<Step> Environment::neighbors(Point p) const {
    std::vector<Step> out;
    out.reserve(kDirections.size());
    for (const Direction& d : kDirections) {
        const Point q{p.x + d.dx, p.y + d.dy};
        if (move_valid(p, q)) out.push_back({q, d.cost});
    }
    return out;
}

std::size_t Environment::lattice_size() const noexcept {
    return static_cast<std::size_t>(x_range_.hi - x_range_.lo + 1) *
           static_cast<std::size_t>(y_range_.hi - y_range_.lo + 1);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) noexcept {
    const int d1 = orientation(q1, q2, p1);
    const int d2 = orientation(q1, q2, p2);
    const int d3 = orientation(p1, p2, q1);
    const int d4 = orientation(p1, p2, q2);
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && within_box(q1, q2, p1)) return true;
    if (d2 == 0 && within_box(q1, q2, p2)) return true;
    if (d3 == 0 && within_box(p1, p2, q1)) return true;
    if (d4 == 0 && within_box(p1, p2, q2)) return true;
    return false;
}

bool point_blocked(const Environment& env, Point p) noexcept { return env.point_blocked(p); }

bool move_valid(const Environment& env, Point a, Point b) noexcept { return env.move_valid(a, b); }

bool path_valid(const Environment& env, std::span<const Point> path, Point start, Point goal) {
    if (path.empty() || path.front() != start || path.back() != goal) return false;
    if (env.point_blocked(path.front())) return false;
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (!env.move_valid(path[i - 1], path[i])) return false;
    }
    return true;
}

double euclidean(Point a, Point b) noexcept {
    const auto dx = static_cast<double>(a.x - b.x);
    const auto dy = static_cast<double>(a.y - b.y);
    return std::sqrt(dx * dx + dy * dy);
}

double path_length(std::span<const Point> path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += euclidean(path[i - 1], path[i]);
    return total;
}

Point scale_point(Point p, Coord k) noexcept { return {p.x * k, p.y * k}; }

Environment scale_environment(const Environment& env, Coord k) {
    if (k < 1) throw ConfigError("scale factor must be >= 1");
    auto scale_list = [k](const std::vector<Barrier>& list) {
        std::vector<Barrier> out = list;
        for (Barrier& b : out) {
            b.fixed *= k;
            b.span_lo *= k;
            b.span_hi *= k;
        }
        return out;
    };
    return Environment({env.x_range().lo * k, env.x_range().hi * k},
                       {env.y_range().lo * k, env.y_range().hi * k}, scale_list(env.h_barriers()),
                       scale_list(env.v_barriers()));
}

Json point_to_json(Point p) { return Json::array({p.x, p.y}); }

Point point_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, y]");
    return {int_field(j[0], path + "[0]"), int_field(j[1], path + "[1]")};
}

void write_environment_fields(const Environment& env, Json& out) {
    out["x_range"] = Json::array({env.x_range().lo, env.x_range().hi});
    out["y_range"] = Json::array({env.y_range().lo, env.y_range().hi});
    Json h = Json::array();
    for (const Barrier& b : env.h_barriers()) h.push_back(Json::array({b.fixed, b.span_lo, b.span_hi}));
    Json v = Json::array();
    for (const Barrier& b : env.v_barriers()) v.push_back(Json::array({b.fixed, b.span_lo, b.span_hi}));
    out["horizontal_barriers"] = std::move(h);
    out["vertical_barriers"] = std::move(v);
}

Json environment_to_json(const Environment& env) {
    Json out = Json::object();
    write_environment_fields(env, out);
    return out;
}

Environment environment_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
    const Range xr = range_from_json(j, path, "x_range");
    const Range yr = range_from_json(j, path, "y_range");
    auto h = barriers_from_json(j, path, "horizontal_barriers", Orientation::horizontal);
    auto v = barriers_from_json(j, path, "vertical_barriers", Orientation::vertical);
    try {
        return Environment(xr, yr, std::move(h), std::move(v));
    } catch (const SchemaError& e) {
        if (path.empty()) throw;
        throw SchemaError(join_path(path, e.field_path()),
                          std::string(e.what()).substr(e.field_path().size() + 2));
    }
}

}  // namespace llmastar
