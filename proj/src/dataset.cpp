#include "llmastar/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "llmastar/search.hpp"

namespace llmastar {

namespace {

std::vector<Barrier> draw_barriers(Rng& rng, Orientation orientation, int count, Range along, Range across,
                                   const GenParams& params) {
    const Coord extent = along.hi - along.lo;
    const auto min_len = static_cast<Coord>(std::ceil(params.span_min_fraction * static_cast<double>(extent)));
    const auto max_len =
        std::max(min_len, static_cast<Coord>(std::floor(params.span_max_fraction * static_cast<double>(extent))));
    std::vector<Barrier> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const Coord len = rng.uniform(min_len, max_len);
        // Keep barriers off the boundary lines; those would block nothing new.
        const Coord fixed = rng.uniform(across.lo + 1, across.hi - 1);
        const Coord lo = rng.uniform(along.lo, along.hi - len);
        out.push_back(orientation == Orientation::horizontal ? Barrier::horizontal(fixed, lo, lo + len)
                                                             : Barrier::vertical(fixed, lo, lo + len));
    }
    return out;
}

Point draw_point(Rng& rng, const Environment& env) {
    const Coord x = rng.uniform(env.x_range().lo, env.x_range().hi);
    const Coord y = rng.uniform(env.y_range().lo, env.y_range().hi);
    return {x, y};
}

std::string index_path(std::size_t i) { return "[" + std::to_string(i) + "]"; }

}  // namespace

void GenParams::validate() const {
    if (x_range.hi - x_range.lo < 2 || y_range.hi - y_range.lo < 2) {
        throw ConfigError("map ranges must span at least 2 units on each axis");
    }
    if (h_barriers_min < 0 || h_barriers_min > h_barriers_max) throw ConfigError("empty horizontal barrier count range");
    if (v_barriers_min < 0 || v_barriers_min > v_barriers_max) throw ConfigError("empty vertical barrier count range");
    if (!(span_min_fraction >= 0.0 && span_min_fraction <= span_max_fraction && span_max_fraction <= 1.0)) {
        throw ConfigError("barrier span fractions must satisfy 0 <= min <= max <= 1");
    }
    if (n_pairs < 1) throw ConfigError("n_pairs must be >= 1");
    if (!(min_separation >= 0.0)) throw ConfigError("min_separation must be >= 0");
    if (pair_attempts < 1 || layout_attempts < 1) throw ConfigError("attempt bounds must be >= 1");
}

MapRecord generate_map(const GenParams& params, Rng& rng, int id) {
    params.validate();
    for (int layout = 0; layout < params.layout_attempts; ++layout) {
        const auto n_h = static_cast<int>(rng.uniform(params.h_barriers_min, params.h_barriers_max));
        const auto n_v = static_cast<int>(rng.uniform(params.v_barriers_min, params.v_barriers_max));
        auto h = draw_barriers(rng, Orientation::horizontal, n_h, params.x_range, params.y_range, params);
        auto v = draw_barriers(rng, Orientation::vertical, n_v, params.y_range, params.x_range, params);
        MapRecord record{id, Environment(params.x_range, params.y_range, std::move(h), std::move(v)), {}};
        const Environment& env = record.environment;

        bool layout_ok = true;
        while (static_cast<int>(record.start_goal.size()) < params.n_pairs && layout_ok) {
            layout_ok = false;
            for (int attempt = 0; attempt < params.pair_attempts; ++attempt) {
                const QueryPair pair{draw_point(rng, env), draw_point(rng, env)};
                if (env.point_blocked(pair.start) || env.point_blocked(pair.goal)) continue;
                if (euclidean(pair.start, pair.goal) < params.min_separation || pair.start == pair.goal) continue;
                if (std::find(record.start_goal.begin(), record.start_goal.end(), pair) != record.start_goal.end()) {
                    continue;
                }
                if (!astar(env, pair.start, pair.goal).found()) continue;
                record.start_goal.push_back(pair);
                layout_ok = true;
                break;
            }
        }
        if (layout_ok) return record;
    }
    throw GenerationExhausted("map " + std::to_string(id) + ": no valid layout within " +
                              std::to_string(params.layout_attempts) + " attempts; parameters are over-constrained");
}

std::vector<MapRecord> generate_dataset(const GenParams& params, int n_maps) {
    if (n_maps < 1) throw ConfigError("n_maps must be >= 1");
    std::vector<MapRecord> maps;
    maps.reserve(static_cast<std::size_t>(n_maps));
    for (int i = 0; i < n_maps; ++i) {
        Rng rng = Rng::split(params.seed, static_cast<std::uint64_t>(i));
        try {
            maps.push_back(generate_map(params, rng, i));
        } catch (const GenerationExhausted& e) {
            throw GenerationExhausted("dataset map index " + std::to_string(i) + ": " + e.what());
        }
    }
    return maps;
}

std::size_t sample_count(const std::vector<MapRecord>& maps) noexcept {
    std::size_t n = 0;
    for (const MapRecord& m : maps) n += m.start_goal.size();
    return n;
}

Json dataset_to_json(const std::vector<MapRecord>& maps) {
    Json out = Json::array();
    for (const MapRecord& m : maps) {
        Json record = Json::object();
        record["id"] = m.id;
        write_environment_fields(m.environment, record);
        Json pairs = Json::array();
        for (const QueryPair& q : m.start_goal) pairs.push_back(Json::array({point_to_json(q.start), point_to_json(q.goal)}));
        record["start_goal"] = std::move(pairs);
        out.push_back(std::move(record));
    }
    return out;
}

std::vector<MapRecord> dataset_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("$", "dataset must be a JSON array of maps");
    std::vector<MapRecord> maps;
    maps.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = index_path(i);
        const Json& item = j[i];
        if (!item.is_object()) throw SchemaError(path, "expected an object");
        if (!item.contains("id")) throw SchemaError(path + ".id", "missing field");
        if (!item["id"].is_number_integer()) throw SchemaError(path + ".id", "expected an integer");
        MapRecord record{item["id"].get<int>(), environment_from_json(item, path), {}};
        if (!item.contains("start_goal")) throw SchemaError(path + ".start_goal", "missing field");
        const Json& pairs = item["start_goal"];
        if (!pairs.is_array()) throw SchemaError(path + ".start_goal", "expected an array");
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const std::string pair_path = path + ".start_goal" + index_path(k);
            if (!pairs[k].is_array() || pairs[k].size() != 2) throw SchemaError(pair_path, "expected [start, goal]");
            const QueryPair q{point_from_json(pairs[k][0], pair_path + "[0]"),
                              point_from_json(pairs[k][1], pair_path + "[1]")};
            if (record.environment.point_blocked(q.start)) throw SchemaError(pair_path + "[0]", "start is blocked");
            if (record.environment.point_blocked(q.goal)) throw SchemaError(pair_path + "[1]", "goal is blocked");
            record.start_goal.push_back(q);
        }
        maps.push_back(std::move(record));
    }
    return maps;
}

std::string dataset_to_string(const std::vector<MapRecord>& maps) {
    const Json j = dataset_to_json(maps);
    std::string out = "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
        out += "  " + j[i].dump();
        out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

void save_dataset(const std::filesystem::path& path, const std::vector<MapRecord>& maps) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << dataset_to_string(maps);
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<MapRecord> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw SchemaError("$", std::string("dataset is not valid JSON: ") + e.what());
    }
    return dataset_from_json(j);
}

}  // namespace llmastar
