#include <charconv>
#include <cmath>
#include <limits>

#include "llmastar/waypoints.hpp"

namespace llmastar {

namespace {

constexpr std::string_view kMarker = "Generated Path:";

class ListReader {
public:
    explicit ListReader(std::string_view text) : text_(text) {}

    std::vector<Point> read_list() {
        expect('[');
        std::vector<Point> points;
        skip_space();
        if (peek() == ']') {
            ++pos_;
            return points;
        }
        while (true) {
            points.push_back(read_pair());
            skip_space();
            const char c = next();
            if (c == ']') return points;
            if (c != ',') fail("expected ',' or ']' between points");
        }
    }

private:
    Point read_pair() {
        expect('[');
        const Coord x = read_number();
        expect(',');
        const Coord y = read_number();
        expect(']');
        return {x, y};
    }

    Coord read_number() {
        skip_space();
        if (peek() == '+') ++pos_;
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - first);
        // Beyond this, llround is undefined.
        constexpr double kLimit = 9.0e15;
        if (!std::isfinite(value) || std::abs(value) > kLimit) fail("coordinate out of range");
        return static_cast<Coord>(std::llround(value));
    }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                       text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char next() {
        if (pos_ >= text_.size()) fail("unbalanced brackets");
        return text_[pos_++];
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size()) fail("unbalanced brackets");
        if (text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(ParseError::Kind::malformed_list,
                         "malformed path list at offset " + std::to_string(pos_) + ": " + why);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<Point> parse_path(std::string_view response) {
    const std::size_t at = response.rfind(kMarker);
    if (at == std::string_view::npos) {
        throw ParseError(ParseError::Kind::marker_missing, "response has no \"Generated Path:\" marker");
    }
    return ListReader(response.substr(at + kMarker.size())).read_list();
}

}  // namespace llmastar
