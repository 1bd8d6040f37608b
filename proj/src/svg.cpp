#include <cmath>
#include <cstdio>
#include <numbers>

#include "llmastar/harness.hpp"

namespace llmastar {

namespace {

constexpr double kUnit = 10.0;
constexpr double kPad = 10.0;

class Canvas {
public:
    explicit Canvas(const Environment& env) : env_(env) {}

    double x(Coord v) const { return kPad + static_cast<double>(v - env_.x_range().lo) * kUnit; }
    double y(Coord v) const { return kPad + static_cast<double>(env_.y_range().hi - v) * kUnit; }
    double width() const { return 2 * kPad + static_cast<double>(env_.x_range().hi - env_.x_range().lo) * kUnit; }
    double height() const { return 2 * kPad + static_cast<double>(env_.y_range().hi - env_.y_range().lo) * kUnit; }

private:
    const Environment& env_;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // Trim trailing zeros so the common integral case prints compactly.
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string star_points(double cx, double cy) {
    constexpr double kOuter = 7.0;
    constexpr double kInner = 3.0;
    std::string pts;
    for (int i = 0; i < 10; ++i) {
        const double r = i % 2 == 0 ? kOuter : kInner;
        const double angle = -std::numbers::pi / 2 + i * std::numbers::pi / 5;
        if (i != 0) pts += ' ';
        pts += num(cx + r * std::cos(angle)) + "," + num(cy + r * std::sin(angle));
    }
    return pts;
}

}  // namespace

std::string render_svg(const Environment& env, const SearchResult* result, Point start, Point goal,
                       const TargetList* targets) {
    const Canvas c(env);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(c.width()) + "\" height=\"" +
           num(c.height()) + "\" viewBox=\"0 0 " + num(c.width()) + " " + num(c.height()) + "\">\n";
    out += "<rect class=\"frame\" x=\"" + num(kPad) + "\" y=\"" + num(kPad) + "\" width=\"" +
           num(c.width() - 2 * kPad) + "\" height=\"" + num(c.height() - 2 * kPad) +
           "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

    if (result) {
        out += "<g fill=\"#b0b0b0\">\n";
        for (Point p : result->closed()) {
            out += "<rect class=\"closed\" x=\"" + num(c.x(p.x) - 4) + "\" y=\"" + num(c.y(p.y) - 4) +
                   "\" width=\"8\" height=\"8\"/>\n";
        }
        out += "</g>\n";
    }

    for (const auto* list : {&env.h_barriers(), &env.v_barriers()}) {
        for (const Barrier& b : *list) {
            out += "<line class=\"barrier\" x1=\"" + num(c.x(b.first().x)) + "\" y1=\"" + num(c.y(b.first().y)) +
                   "\" x2=\"" + num(c.x(b.second().x)) + "\" y2=\"" + num(c.y(b.second().y)) +
                   "\" stroke=\"black\" stroke-width=\"3\"/>\n";
        }
    }

    if (result && result->path) {
        out += "<polyline class=\"path\" fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < result->path->size(); ++i) {
            const Point p = (*result->path)[i];
            if (i != 0) out += ' ';
            out += num(c.x(p.x)) + "," + num(c.y(p.y));
        }
        out += "\"/>\n";
    }

    if (targets) {
        for (Point p : targets->waypoints()) {
            out += "<polygon class=\"waypoint\" fill=\"gold\" stroke=\"black\" stroke-width=\"0.5\" points=\"" +
                   star_points(c.x(p.x), c.y(p.y)) + "\"/>\n";
        }
    }

    out += "<circle class=\"start\" cx=\"" + num(c.x(start.x)) + "\" cy=\"" + num(c.y(start.y)) +
           "\" r=\"5\" fill=\"blue\"/>\n";
    out += "<circle class=\"goal\" cx=\"" + num(c.x(goal.x)) + "\" cy=\"" + num(c.y(goal.y)) +
           "\" r=\"5\" fill=\"green\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace llmastar
