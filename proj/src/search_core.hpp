#pragma once

// Dense bookkeeping shared by the A*, weighted A* and target-guided searches.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "llmastar/env.hpp"
#include "llmastar/search.hpp"

namespace llmastar::detail {

enum class NodeState : std::uint8_t { unseen, open, closed };

struct OpenEntry {
    double f;
    double g;
    Point p;
};

// Heap order: lower f first, then larger g, then smaller (x, y).
struct PopsLater {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const noexcept {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return b.p < a.p;
    }
};

class SearchCore {
public:
    explicit SearchCore(const Environment& env)
        : env_(env),
          height_(static_cast<std::size_t>(env.y_range().hi - env.y_range().lo + 1)),
          g_(env.lattice_size(), std::numeric_limits<double>::infinity()),
          parent_(env.lattice_size(), kNoParent),
          state_(env.lattice_size(), NodeState::unseen) {}

    std::size_t index(Point p) const noexcept {
        return static_cast<std::size_t>(p.x - env_.x_range().lo) * height_ +
               static_cast<std::size_t>(p.y - env_.y_range().lo);
    }

    Point point(std::size_t idx) const noexcept {
        return {env_.x_range().lo + static_cast<Coord>(idx / height_),
                env_.y_range().lo + static_cast<Coord>(idx % height_)};
    }

    NodeState state(Point p) const noexcept { return state_[index(p)]; }
    double g(Point p) const noexcept { return g_[index(p)]; }

    /// Records a (possibly improved) g and parent and queues `p` with priority `f`.
    void relax(Point p, std::optional<Point> parent, double g, double f) {
        const std::size_t idx = index(p);
        g_[idx] = g;
        parent_[idx] = parent ? index(*parent) : kNoParent;
        if (state_[idx] != NodeState::open) {
            state_[idx] = NodeState::open;
            ++open_count_;
            ++stats_.pushes;
            stats_.peak_storage = std::max<std::uint64_t>(stats_.peak_storage, open_count_ + closed_count_);
        }
        heap_.push_back({f, g, p});
        std::push_heap(heap_.begin(), heap_.end(), PopsLater{});
    }

    /// Pops the best live entry, discarding stale ones. Counts an expansion.
    std::optional<Point> pop() {
        while (!heap_.empty()) {
            std::pop_heap(heap_.begin(), heap_.end(), PopsLater{});
            const OpenEntry e = heap_.back();
            heap_.pop_back();
            const std::size_t idx = index(e.p);
            if (state_[idx] != NodeState::open || e.g != g_[idx]) continue;
            ++stats_.expansions;
            order_.push_back(e.p);
            return e.p;
        }
        return std::nullopt;
    }

    void close(Point p) {
        const std::size_t idx = index(p);
        state_[idx] = NodeState::closed;
        --open_count_;
        ++closed_count_;
    }

    /// Drops stale entries, recomputes f for every OPEN state and re-heapifies.
    /// Returns the number of entries recomputed.
    template <typename PriorityFn>
    std::uint64_t rebuild(PriorityFn&& priority) {
        std::vector<OpenEntry> live;
        live.reserve(open_count_);
        for (const OpenEntry& e : heap_) {
            const std::size_t idx = index(e.p);
            if (state_[idx] == NodeState::open && e.g == g_[idx]) live.push_back({priority(e.p, e.g), e.g, e.p});
        }
        heap_ = std::move(live);
        std::make_heap(heap_.begin(), heap_.end(), PopsLater{});
        return heap_.size();
    }

    const std::vector<OpenEntry>& open_entries() const noexcept { return heap_; }
    bool live(const OpenEntry& e) const noexcept {
        const std::size_t idx = index(e.p);
        return state_[idx] == NodeState::open && e.g == g_[idx];
    }

    SearchStats& stats() noexcept { return stats_; }

    SearchResult finish(std::optional<Point> goal) {
        SearchResult r;
        if (goal) {
            std::vector<Point> path;
            for (std::size_t idx = index(*goal);; idx = parent_[idx]) {
                path.push_back(point(idx));
                if (parent_[idx] == kNoParent) break;
            }
            std::reverse(path.begin(), path.end());
            r.cost = g_[index(*goal)];
            r.path = std::move(path);
        }
        r.stats = stats_;
        r.expansion_order = std::move(order_);
        return r;
    }

private:
    static constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

    const Environment& env_;
    std::size_t height_;
    std::vector<double> g_;
    std::vector<std::size_t> parent_;
    std::vector<NodeState> state_;
    std::vector<OpenEntry> heap_;
    std::vector<Point> order_;
    std::uint64_t open_count_ = 0;
    std::uint64_t closed_count_ = 0;
    SearchStats stats_;
};

void require_free_endpoints(const Environment& env, Point start, Point goal);

}  // namespace llmastar::detail
