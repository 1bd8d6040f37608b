#include <algorithm>
#include <sstream>

#include "llmastar/waypoints.hpp"

namespace llmastar {

namespace {

constexpr std::string_view kInstructions =
    "Identify a path between the start and goal points to navigate around obstacles and find the shortest "
    "path to the goal.\n"
    "Horizontal barriers are represented as [y, x_start, x_end], and vertical barriers are represented as "
    "[x, y_start, y_end].\n"
    "Conclude your response with the generated path in the format \"Generated Path: [[x1, y1], [x2, y2], "
    "...]\".\n";

constexpr std::string_view kDemoQuery =
    "Start Point: [5, 5]\n"
    "Goal Point: [20, 20]\n"
    "Horizontal Barriers: [[10, 0, 25], [15, 30, 50]]\n"
    "Vertical Barriers: [[25, 10, 22]]\n";

constexpr std::string_view kDemoAnswer = "Generated Path: [[5, 5], [26, 9], [25, 23], [20, 20]]";

constexpr std::string_view kCotReasoning =
    "Thought: Identify a path from [5, 5] to [20, 20] while avoiding the horizontal barrier at y=10 spanning "
    "x=0 to x=25 by moving upwards and right, then bypass the vertical barrier at x=25 spanning y=10 to y=22, "
    "and finally move directly to [20, 20].\n";

constexpr std::string_view kRepeReasoning =
    "- First Iteration on [5, 5]\n"
    "Thought: The horizontal barrier at y=10 spanning x=0 to x=25 blocks the direct path to the goal. To "
    "navigate around it, we should move to the upper-right corner of the barrier.\n"
    "Selected Point: [26, 9]\n"
    "Evaluation: The selected point [26, 9] effectively bypasses the horizontal barrier, positioning us at "
    "its corner and maintaining progress toward the goal without encountering additional obstacles.\n"
    "- Second Iteration on [26, 9]\n"
    "Thought: Now that we have bypassed the horizontal barrier, the path to the goal seems clear.\n"
    "Selected Point: [20, 20]\n"
    "Evaluation: The path is obstructed by the vertical barrier, leading to a collision. A more effective "
    "route involves moving around this vertical barrier.\n"
    "Thought: To bypass the vertical barrier at x=25, we should move along its length and then turn around "
    "it to continue toward the goal.\n"
    "Selected Point: [25, 23]\n"
    "Evaluation: The selected point [25, 23] successfully avoids the vertical barrier and brings us closer "
    "to the goal without encountering further obstacles.\n"
    "- Third Iteration on [25, 23]\n"
    "Thought: From this position, there are no barriers directly obstructing the path to the goal.\n"
    "Selected Point: [20, 20]\n"
    "Evaluation: The path to the goal is clear from here, allowing a direct move to the goal.\n";

}  // namespace

int default_shots(PromptStyle style) noexcept { return style == PromptStyle::few_shot ? 5 : 3; }

std::string_view style_name(PromptStyle style) noexcept {
    switch (style) {
        case PromptStyle::cot:
            return "cot";
        case PromptStyle::repe:
            return "repe";
        case PromptStyle::few_shot:
        default:
            return "few_shot";
    }
}

PromptStyle parse_style(std::string_view name) {
    if (name == "few_shot") return PromptStyle::few_shot;
    if (name == "cot") return PromptStyle::cot;
    if (name == "repe") return PromptStyle::repe;
    throw ConfigError("unknown prompt style '" + std::string(name) + "' (expected few_shot, cot or repe)");
}

std::vector<std::string> default_demonstrations(PromptStyle style) {
    std::string block(kDemoQuery);
    if (style == PromptStyle::cot) block += kCotReasoning;
    if (style == PromptStyle::repe) block += kRepeReasoning;
    block += kDemoAnswer;
    return {block};
}

std::string format_point(Point p) {
    return "[" + std::to_string(p.x) + ", " + std::to_string(p.y) + "]";
}

std::string format_barriers(std::span<const Barrier> barriers) {
    std::string out = "[";
    for (std::size_t i = 0; i < barriers.size(); ++i) {
        if (i != 0) out += ", ";
        out += "[" + std::to_string(barriers[i].fixed) + ", " + std::to_string(barriers[i].span_lo) + ", " +
               std::to_string(barriers[i].span_hi) + "]";
    }
    return out + "]";
}

std::string format_path(std::span<const Point> path) {
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i != 0) out += ", ";
        out += format_point(path[i]);
    }
    return out + "]";
}

std::string render_prompt(PromptStyle style, const Environment& env, Point start, Point goal) {
    const auto demos = default_demonstrations(style);
    return render_prompt(style, env, start, goal, demos, default_shots(style));
}

std::string render_prompt(PromptStyle /*style*/, const Environment& env, Point start, Point goal,
                          std::span<const std::string> demonstrations, int shots) {
    std::ostringstream out;
    out << kInstructions << '\n';
    const std::size_t used = std::min<std::size_t>(demonstrations.size(), shots > 0 ? shots : 0);
    for (std::size_t i = 0; i < used; ++i) out << demonstrations[i] << "\n\n";
    out << "Start Point: " << format_point(start) << '\n'
        << "Goal Point: " << format_point(goal) << '\n'
        << "Horizontal Barriers: " << format_barriers(env.h_barriers()) << '\n'
        << "Vertical Barriers: " << format_barriers(env.v_barriers()) << '\n'
        << "Generated Path:";
    return out.str();
}

}  // namespace llmastar
