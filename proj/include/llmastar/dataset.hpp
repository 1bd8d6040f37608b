#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "llmastar/env.hpp"
#include "llmastar/error.hpp"
#include "llmastar/rng.hpp"

namespace llmastar {

struct QueryPair {
    Point start;
    Point goal;

    friend bool operator==(const QueryPair&, const QueryPair&) = default;
};

struct MapRecord {
    int id = 0;
    Environment environment;
    std::vector<QueryPair> start_goal;

    friend bool operator==(const MapRecord&, const MapRecord&) = default;
};

/// Generation parameters. Defaults give 50x30 maps with 3-6 horizontal and
/// 2-4 vertical barriers spanning 20-60% of their axis, and 10 query pairs.
struct GenParams {
    Range x_range{0, 50};
    Range y_range{0, 30};
    int h_barriers_min = 3;
    int h_barriers_max = 6;
    int v_barriers_min = 2;
    int v_barriers_max = 4;
    double span_min_fraction = 0.2;
    double span_max_fraction = 0.6;
    int n_pairs = 10;
    /// Minimum Euclidean start-goal distance.
    double min_separation = 10.0;
    std::uint64_t seed = 0;
    /// Draws allowed per query pair before the barrier layout is redrawn.
    int pair_attempts = 2000;
    /// Barrier layouts tried before giving up on a map.
    int layout_attempts = 50;

    void validate() const;
};

class GenerationExhausted : public Error {
public:
    explicit GenerationExhausted(const std::string& what) : Error(ErrorCategory::config, what) {}
};

/// One map drawn from `rng`. Every start and goal is free, pairs are distinct,
/// and each pair is solvable by A*.
MapRecord generate_map(const GenParams& params, Rng& rng, int id);

/// `n_maps` maps; map i draws from stream i of the seed, so any map can be
/// regenerated on its own.
std::vector<MapRecord> generate_dataset(const GenParams& params, int n_maps);

std::size_t sample_count(const std::vector<MapRecord>& maps) noexcept;

Json dataset_to_json(const std::vector<MapRecord>& maps);
/// Throws SchemaError naming the offending field path, e.g. "[3].x_range".
std::vector<MapRecord> dataset_from_json(const Json& j);

/// One map object per line; byte-stable for equal datasets.
std::string dataset_to_string(const std::vector<MapRecord>& maps);

void save_dataset(const std::filesystem::path& path, const std::vector<MapRecord>& maps);
std::vector<MapRecord> load_dataset(const std::filesystem::path& path);

}  // namespace llmastar
