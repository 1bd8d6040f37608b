// llmastar: dataset generation, benchmarks, scalability sweeps, cache replay
// and SVG rendering for A*, dynamic weighted A* and target-guided A*.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "llmastar/dataset.hpp"
#include "llmastar/harness.hpp"
#include "llmastar/waypoints.hpp"

namespace {

using namespace llmastar;

struct ProviderOptions {
    std::string provider = "oracle:3";
    std::string style = "few_shot";
    std::string cache_path = "llm_cache.json";
    std::string demos_path;
    ProviderConfig config;
    long long timeout_ms = 60'000;
};

void add_provider_options(CLI::App* cmd, ProviderOptions& o) {
    cmd->add_option("--provider", o.provider, "Waypoint provider: live | cache-only | oracle:N")
        ->capture_default_str();
    cmd->add_option("--style", o.style, "Prompt style: few_shot | cot | repe")->capture_default_str();
    cmd->add_option("--cache", o.cache_path, "Response cache file")->capture_default_str();
    cmd->add_option("--demos", o.demos_path, "JSON array of demonstration blocks replacing the built-in one");
    cmd->add_option("--base-url", o.config.base_url, "Chat-completions base URL")->capture_default_str();
    cmd->add_option("--model", o.config.model_name, "Model name")->capture_default_str();
    cmd->add_option("--api-key-env", o.config.api_key_env, "Environment variable holding the API key")
        ->capture_default_str();
    cmd->add_option("--temperature", o.config.temperature)->capture_default_str();
    cmd->add_option("--max-tokens", o.config.max_tokens)->capture_default_str();
    cmd->add_option("--max-retries", o.config.max_retries)->capture_default_str();
    cmd->add_option("--timeout-ms", o.timeout_ms)->capture_default_str();
    cmd->add_option("--max-in-flight", o.config.max_in_flight)->capture_default_str();
}

std::vector<std::string> load_demos(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw IoError("cannot open demonstrations file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path, e.what());
    }
    if (!j.is_array()) throw SchemaError(path, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw SchemaError(path, "expected an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

// Owns whatever the selected provider needs for the length of one command.
class ProviderSession {
public:
    ProviderSession(const ProviderOptions& o, bool needed) {
        if (!needed) return;
        if (o.provider.rfind("oracle:", 0) == 0) {
            int n = 0;
            try {
                n = std::stoi(o.provider.substr(7));
            } catch (const std::exception&) {
                throw ConfigError("bad oracle provider '" + o.provider + "' (expected oracle:N)");
            }
            if (n < 0) throw ConfigError("oracle sample count must be >= 0");
            source_ = std::make_unique<OracleSource>(n);
            return;
        }
        CachePolicy policy;
        if (o.provider == "live") {
            policy = CachePolicy::read_write;
        } else if (o.provider == "cache-only") {
            policy = CachePolicy::cache_only;
        } else {
            throw ConfigError("unknown provider '" + o.provider + "'");
        }
        cache_ = std::make_unique<ResponseCache>(ResponseCache::open(o.cache_path));
        if (policy == CachePolicy::cache_only && cache_->size() == 0) {
            throw ConfigError("cache-only provider with a cold cache: " + o.cache_path);
        }
        ProviderConfig cfg = o.config;
        cfg.timeout = std::chrono::milliseconds(o.timeout_ms);
        client_ = std::make_unique<ChatClient>(cfg);
        source_ = std::make_unique<LlmSource>(*client_, *cache_, parse_style(o.style), policy, load_demos(o.demos_path));
        persist_ = policy == CachePolicy::read_write;
    }

    ProviderSession(const ProviderSession&) = delete;
    ProviderSession& operator=(const ProviderSession&) = delete;

    ~ProviderSession() {
        try {
            flush();
        } catch (const std::exception& e) {
            std::cerr << "warning: " << e.what() << '\n';
        }
    }

    WaypointSource* source() const { return source_.get(); }

    void flush() {
        if (persist_ && cache_) cache_->save();
    }

    std::uint64_t requests_sent() const { return client_ ? client_->requests_sent() : 0; }

private:
    std::unique_ptr<ResponseCache> cache_;
    std::unique_ptr<ChatClient> client_;
    std::unique_ptr<WaypointSource> source_;
    bool persist_ = false;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path);
}

bool needs_provider(Algorithm a) { return a == Algorithm::llm_astar || a == Algorithm::llm_only; }

struct BenchOptions {
    std::string dataset;
    std::string algo = "astar";
    std::string heuristic = "euclidean";
    double w0 = 2.0;
    double decay = 0.99;
    int scale = 1;
    std::size_t workers = 0;
    std::string out_json = "report.json";
    std::string out_table;
    ProviderOptions provider;
};

void add_bench_options(CLI::App* cmd, BenchOptions& o) {
    cmd->add_option("--dataset", o.dataset, "Dataset JSON file")->required();
    cmd->add_option("--algo", o.algo, "astar | wastar | llm_astar | llm_only")->capture_default_str();
    cmd->add_option("--heuristic", o.heuristic, "euclidean | chebyshev")->capture_default_str();
    cmd->add_option("--w0", o.w0, "Initial weight for wastar")->capture_default_str();
    cmd->add_option("--decay", o.decay, "Per-expansion weight decay for wastar")->capture_default_str();
    cmd->add_option("--scale", o.scale, "Environment scale factor")->capture_default_str();
    cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->capture_default_str();
    cmd->add_option("--out-json", o.out_json, "Report JSON output")->capture_default_str();
    cmd->add_option("--out-table", o.out_table, "Report text table output (stdout always gets it)");
    add_provider_options(cmd, o.provider);
}

int run_bench_command(const BenchOptions& o) {
    BenchConfig cfg;
    cfg.algorithm = parse_algorithm(o.algo);
    cfg.heuristic = parse_heuristic(o.heuristic);
    cfg.w0 = o.w0;
    cfg.decay = o.decay;
    cfg.scale = o.scale;
    cfg.workers = o.workers;
    ProviderSession session(o.provider, needs_provider(cfg.algorithm));
    const auto maps = load_dataset(o.dataset);
    BenchResult result = run_bench(maps, cfg, session.source());
    session.flush();
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    write_text(o.out_json, report_to_json(result.report).dump(2) + "\n");
    const std::string table = report_to_table(result.report);
    write_text(o.out_table, table);
    std::cout << table;
    std::cerr << "network requests: " << session.requests_sent() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LLM-guided A* path planning benchmark"};
    app.require_subcommand(1);

    GenParams gen;
    int gen_maps = 100;
    std::string gen_out = "dataset.json";
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random map dataset");
    gen_cmd->add_option("--maps", gen_maps, "Number of maps")->capture_default_str();
    gen_cmd->add_option("--pairs", gen.n_pairs, "Start/goal pairs per map")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--width", gen.x_range.hi, "x_max (x_min is 0)")->capture_default_str();
    gen_cmd->add_option("--height", gen.y_range.hi, "y_max (y_min is 0)")->capture_default_str();
    gen_cmd->add_option("--h-min", gen.h_barriers_min)->capture_default_str();
    gen_cmd->add_option("--h-max", gen.h_barriers_max)->capture_default_str();
    gen_cmd->add_option("--v-min", gen.v_barriers_min)->capture_default_str();
    gen_cmd->add_option("--v-max", gen.v_barriers_max)->capture_default_str();
    gen_cmd->add_option("--span-min", gen.span_min_fraction, "Minimum barrier span (axis fraction)")
        ->capture_default_str();
    gen_cmd->add_option("--span-max", gen.span_max_fraction, "Maximum barrier span (axis fraction)")
        ->capture_default_str();
    gen_cmd->add_option("--min-separation", gen.min_separation)->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Output dataset file")->capture_default_str();

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run one algorithm against the A* baseline");
    add_bench_options(bench_cmd, bench);

    BenchOptions replay;
    replay.provider.provider = "cache-only";
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a benchmark from the response cache only");
    add_bench_options(replay_cmd, replay);

    std::string scale_dataset;
    std::vector<int> scales{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    ScaleConfig scale_cfg;
    std::string scale_heuristic = "euclidean";
    std::string scale_json = "scale.json";
    std::string scale_table;
    ProviderOptions scale_provider;
    auto* scale_cmd = app.add_subcommand("scale", "Scalability sweep of A* and LLM-A*");
    scale_cmd->add_option("--dataset", scale_dataset, "Dataset JSON file")->required();
    scale_cmd->add_option("--scales", scales, "Scale factors (must include 1)")->delimiter(',')->capture_default_str();
    scale_cmd->add_option("--queries", scale_cfg.queries, "Random queries per scale")->capture_default_str();
    scale_cmd->add_option("--seed", scale_cfg.seed, "Query sampling seed")->capture_default_str();
    scale_cmd->add_option("--heuristic", scale_heuristic)->capture_default_str();
    scale_cmd->add_option("--workers", scale_cfg.workers)->capture_default_str();
    scale_cmd->add_option("--out-json", scale_json)->capture_default_str();
    scale_cmd->add_option("--out-table", scale_table);
    add_provider_options(scale_cmd, scale_provider);

    std::string svg_dataset;
    std::size_t svg_map = 0;
    std::size_t svg_pair = 0;
    std::string svg_algo = "astar";
    std::string svg_heuristic = "euclidean";
    std::string svg_out = "path.svg";
    double svg_w0 = 2.0;
    double svg_decay = 0.99;
    int svg_scale = 1;
    ProviderOptions svg_provider;
    auto* svg_cmd = app.add_subcommand("svg", "Render one search as SVG");
    svg_cmd->add_option("--dataset", svg_dataset)->required();
    svg_cmd->add_option("--map", svg_map, "Map index in the dataset")->capture_default_str();
    svg_cmd->add_option("--pair", svg_pair, "Pair index within the map")->capture_default_str();
    svg_cmd->add_option("--algo", svg_algo, "astar | wastar | llm_astar")->capture_default_str();
    svg_cmd->add_option("--heuristic", svg_heuristic)->capture_default_str();
    svg_cmd->add_option("--w0", svg_w0)->capture_default_str();
    svg_cmd->add_option("--decay", svg_decay)->capture_default_str();
    svg_cmd->add_option("--scale", svg_scale)->capture_default_str();
    svg_cmd->add_option("--out", svg_out)->capture_default_str();
    add_provider_options(svg_cmd, svg_provider);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            gen.x_range.lo = 0;
            gen.y_range.lo = 0;
            const auto maps = generate_dataset(gen, gen_maps);
            save_dataset(gen_out, maps);
            std::cout << "wrote " << maps.size() << " maps, " << sample_count(maps) << " samples to " << gen_out
                      << '\n';
            return 0;
        }
        if (*bench_cmd) return run_bench_command(bench);
        if (*replay_cmd) return run_bench_command(replay);
        if (*scale_cmd) {
            scale_cfg.scales = scales;
            scale_cfg.heuristic = parse_heuristic(scale_heuristic);
            ProviderSession session(scale_provider, true);
            const auto maps = load_dataset(scale_dataset);
            const ScaleReport report = run_scale(maps, scale_cfg, *session.source());
            session.flush();
            write_text(scale_json, scale_report_to_json(report).dump(2) + "\n");
            const std::string table = scale_report_to_table(report);
            write_text(scale_table, table);
            std::cout << table;
            return 0;
        }
        if (*svg_cmd) {
            const auto maps = load_dataset(svg_dataset);
            if (svg_map >= maps.size()) throw ConfigError("--map out of range");
            if (svg_pair >= maps[svg_map].start_goal.size()) throw ConfigError("--pair out of range");
            BenchConfig cfg;
            cfg.algorithm = parse_algorithm(svg_algo);
            if (cfg.algorithm == Algorithm::llm_only) throw ConfigError("svg renders searches; llm_only has none");
            cfg.heuristic = parse_heuristic(svg_heuristic);
            cfg.w0 = svg_w0;
            cfg.decay = svg_decay;
            if (svg_scale < 1) throw ConfigError("--scale must be >= 1");
            const Environment env = scale_environment(maps[svg_map].environment, svg_scale);
            const QueryPair raw = maps[svg_map].start_goal[svg_pair];
            const QueryPair q{scale_point(raw.start, svg_scale), scale_point(raw.goal, svg_scale)};

            ProviderSession session(svg_provider, needs_provider(cfg.algorithm));
            std::optional<TargetList> targets;
            SearchResult result;
            if (cfg.algorithm == Algorithm::llm_astar) {
                std::vector<Point> proposal;
                try {
                    proposal = session.source()->propose(env, q.start, q.goal);
                } catch (const CacheMissError&) {
                    throw;
                } catch (const ProviderError& e) {
                    std::cerr << "warning: provider failed (" << e.what() << "); using [start, goal]\n";
                }
                targets = sanitize_targets(env, proposal, q.start, q.goal);
                result = llm_astar_search(env, q.start, q.goal, *targets, cfg.heuristic);
            } else {
                run_one(env, q, cfg, nullptr, sample_id(maps[svg_map], svg_pair), 0.0, nullptr, &result);
            }
            write_text(svg_out, render_svg(env, &result, q.start, q.goal, targets ? &*targets : nullptr));
            std::cout << "expansions " << result.stats.expansions << ", peak storage " << result.stats.peak_storage
                      << ", closed " << result.closed().size() << ", wrote " << svg_out << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
