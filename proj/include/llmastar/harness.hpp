#pragma once

// Benchmark orchestration shared by the CLI and the acceptance suite.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llmastar/dataset.hpp"
#include "llmastar/llm_astar.hpp"
#include "llmastar/metrics.hpp"
#include "llmastar/search.hpp"
#include "llmastar/waypoints.hpp"

namespace llmastar {

enum class Algorithm : std::uint8_t { astar, wastar, llm_astar, llm_only };

std::string_view algorithm_name(Algorithm a) noexcept;
/// "astar", "wastar", "llm_astar", "llm_only". Throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);
HeuristicKind parse_heuristic(std::string_view name);
std::string_view heuristic_name(HeuristicKind h) noexcept;

struct BenchConfig {
    Algorithm algorithm = Algorithm::astar;
    HeuristicKind heuristic = HeuristicKind::euclidean;
    double w0 = 2.0;
    double decay = 0.99;
    int scale = 1;
    /// 0 means one worker per hardware thread.
    std::size_t workers = 0;
};

struct BenchResult {
    BenchReport report;
    std::vector<RunRecord> runs;
    std::vector<RunRecord> baseline;
    /// Provider failures that fell back to the [start, goal] target list.
    std::vector<std::string> warnings;
};

/// "map<id>/pair<j>"
std::string sample_id(const MapRecord& map, std::size_t pair);

/// Runs the configured algorithm on every sample, alongside A* as the
/// per-sample baseline. `source` is required for llm_astar and llm_only.
/// Rows are [astar, <algorithm>] (just astar when that is the algorithm).
/// Cache misses abort with CacheMissError naming the sample; other provider
/// failures degrade to an empty proposal and are reported in `warnings`.
BenchResult run_bench(const std::vector<MapRecord>& maps, const BenchConfig& config, WaypointSource* source);

/// Runs one algorithm on one query and turns the result into a RunRecord.
/// `optimal_length` is copied into the record.
RunRecord run_one(const Environment& env, QueryPair query, const BenchConfig& config, WaypointSource* source,
                  const std::string& id, double optimal_length, std::vector<std::string>* warnings = nullptr,
                  SearchResult* search_out = nullptr);

struct ScaleConfig {
    std::vector<int> scales{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int queries = 10;
    std::uint64_t seed = 0;
    HeuristicKind heuristic = HeuristicKind::euclidean;
    std::size_t workers = 0;
};

struct ScaleReport {
    /// The (map index, pair index) queries rescaled at every scale.
    std::vector<std::pair<std::size_t, std::size_t>> queries;
    std::vector<ScalePoint> astar;
    std::vector<ScalePoint> guided;
    std::vector<GrowthRow> astar_growth;
    std::vector<GrowthRow> guided_growth;
};

/// Draws `queries` samples once with `seed`, rescales them by every k in
/// `scales` and records mean expansions and peak storage for A* and the
/// guided search.
ScaleReport run_scale(const std::vector<MapRecord>& maps, const ScaleConfig& config, WaypointSource& source);

Json scale_report_to_json(const ScaleReport& report);
std::string scale_report_to_table(const ScaleReport& report);

/// Static SVG: black barrier lines, a gray square per CLOSED state, a red
/// path polyline, blue start and green goal dots, star glyphs for waypoints.
/// y axis points up; one lattice unit is 10 SVG units.
std::string render_svg(const Environment& env, const SearchResult* result, Point start, Point goal,
                       const TargetList* targets = nullptr);

}  // namespace llmastar
