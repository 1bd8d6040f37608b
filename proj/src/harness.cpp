#include "llmastar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <thread>

#include "llmastar/rng.hpp"

namespace llmastar {

namespace {

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
    std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(n, jobs));
}

// Calls fn(i) for i in [0, jobs) across `workers` threads. The first failure
// by index is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t jobs, std::size_t workers, Fn&& fn) {
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n = worker_count(workers, jobs);
    if (n == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

RunRecord record_search(const Environment& env, QueryPair q, const SearchResult& r, const std::string& id,
                        Algorithm a, double optimal_length) {
    RunRecord run;
    run.sample_id = id;
    run.algorithm = std::string(algorithm_name(a));
    run.stats = r.stats;
    run.optimal_length = optimal_length;
    if (r.found()) {
        run.valid = path_valid(env, *r.path, q.start, q.goal);
        run.path_length = path_length(*r.path);
    }
    return run;
}

std::vector<Point> propose_or_fallback(WaypointSource& source, const Environment& env, QueryPair q,
                                       const std::string& id, std::vector<std::string>* warnings) {
    try {
        return source.propose(env, q.start, q.goal);
    } catch (const CacheMissError& e) {
        throw CacheMissError("sample " + id + ": " + e.what());
    } catch (const ProviderError& e) {
        if (warnings) warnings->push_back("sample " + id + ": provider failed (" + e.what() + "); using [start, goal]");
        return {};
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::wastar:
            return "wastar";
        case Algorithm::llm_astar:
            return "llm_astar";
        case Algorithm::llm_only:
            return "llm_only";
        case Algorithm::astar:
        default:
            return "astar";
    }
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "astar") return Algorithm::astar;
    if (name == "wastar") return Algorithm::wastar;
    if (name == "llm_astar") return Algorithm::llm_astar;
    if (name == "llm_only") return Algorithm::llm_only;
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

HeuristicKind parse_heuristic(std::string_view name) {
    if (name == "euclidean") return HeuristicKind::euclidean;
    if (name == "chebyshev") return HeuristicKind::chebyshev;
    throw ConfigError("unknown heuristic '" + std::string(name) + "'");
}

std::string_view heuristic_name(HeuristicKind h) noexcept {
    return h == HeuristicKind::chebyshev ? "chebyshev" : "euclidean";
}

std::string sample_id(const MapRecord& map, std::size_t pair) {
    return "map" + std::to_string(map.id) + "/pair" + std::to_string(pair);
}

RunRecord run_one(const Environment& env, QueryPair q, const BenchConfig& config, WaypointSource* source,
                  const std::string& id, double optimal_length, std::vector<std::string>* warnings,
                  SearchResult* search_out) {
    auto keep = [&](SearchResult r) {
        RunRecord run = record_search(env, q, r, id, config.algorithm, optimal_length);
        if (search_out) *search_out = std::move(r);
        return run;
    };
    switch (config.algorithm) {
        case Algorithm::astar:
            return keep(astar(env, q.start, q.goal, config.heuristic));
        case Algorithm::wastar:
            return keep(weighted_astar(env, q.start, q.goal, config.heuristic, config.w0, config.decay));
        case Algorithm::llm_astar: {
            if (!source) throw ConfigError("llm_astar needs a waypoint provider");
            const auto raw = propose_or_fallback(*source, env, q, id, warnings);
            return keep(llm_astar_search(env, q.start, q.goal, sanitize_targets(env, raw, q.start, q.goal),
                                         config.heuristic));
        }
        case Algorithm::llm_only: {
            if (!source) throw ConfigError("llm_only needs a waypoint provider");
            RunRecord run;
            run.sample_id = id;
            run.algorithm = "llm_only";
            run.optimal_length = optimal_length;
            LlmOnlyResult r;
            try {
                r = llm_only_path(*source, env, q.start, q.goal);
            } catch (const CacheMissError& e) {
                throw CacheMissError("sample " + id + ": " + e.what());
            }
            if (r.path.empty() && warnings) warnings->push_back("sample " + id + ": provider returned no path");
            run.valid = r.valid;
            if (r.valid) run.path_length = path_length(r.path);
            return run;
        }
    }
    throw ConfigError("unhandled algorithm");
}

BenchResult run_bench(const std::vector<MapRecord>& maps, const BenchConfig& config, WaypointSource* source) {
    if (config.scale < 1) throw ConfigError("scale must be >= 1");
    struct Job {
        const MapRecord* map;
        std::size_t pair;
    };
    std::vector<Job> jobs;
    for (const MapRecord& m : maps) {
        for (std::size_t j = 0; j < m.start_goal.size(); ++j) jobs.push_back({&m, j});
    }
    if (jobs.empty()) throw ConfigError("dataset has no samples");

    std::vector<RunRecord> baseline(jobs.size());
    std::vector<RunRecord> runs(jobs.size());
    std::vector<std::vector<std::string>> warnings(jobs.size());
    const BenchConfig baseline_config{Algorithm::astar, config.heuristic, 1.0, 1.0, config.scale, config.workers};

    parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
        const Job& job = jobs[i];
        const Environment env = config.scale == 1 ? job.map->environment
                                                  : scale_environment(job.map->environment, config.scale);
        const QueryPair raw_q = job.map->start_goal[job.pair];
        const QueryPair q{scale_point(raw_q.start, config.scale), scale_point(raw_q.goal, config.scale)};
        const std::string id = sample_id(*job.map, job.pair);

        // Memoised baseline: computed once per sample, reused as the A* run.
        baseline[i] = run_one(env, q, baseline_config, nullptr, id, 0.0);
        baseline[i].optimal_length = baseline[i].path_length.value_or(0.0);
        if (config.algorithm == Algorithm::astar) {
            runs[i] = baseline[i];
        } else {
            runs[i] = run_one(env, q, config, source, id, baseline[i].optimal_length, &warnings[i]);
        }
    });

    BenchResult result;
    result.report.scale = config.scale;
    result.report.samples = jobs.size();
    result.report.rows.push_back(make_report_row("astar", baseline, baseline));
    if (config.algorithm != Algorithm::astar) {
        std::string label(algorithm_name(config.algorithm));
        if (config.algorithm == Algorithm::wastar) {
            label += "(w0=" + format_double(config.w0) + ",decay=" + format_double(config.decay) + ")";
        } else if (source) {
            label += "[" + source->name() + "]";
        }
        result.report.rows.push_back(make_report_row(label, runs, baseline));
    }
    for (auto& w : warnings) {
        for (auto& line : w) result.warnings.push_back(std::move(line));
    }
    result.runs = std::move(runs);
    result.baseline = std::move(baseline);
    return result;
}

ScaleReport run_scale(const std::vector<MapRecord>& maps, const ScaleConfig& config, WaypointSource& source) {
    if (config.queries < 1) throw ConfigError("scale sweep needs at least one query");
    if (maps.empty()) throw ConfigError("dataset has no maps");
    for (int k : config.scales) {
        if (k < 1) throw ConfigError("scales must be >= 1");
    }

    ScaleReport report;
    Rng rng(config.seed);
    for (int i = 0; i < config.queries; ++i) {
        const auto m = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(maps.size()) - 1));
        const auto p = static_cast<std::size_t>(
            rng.uniform(0, static_cast<std::int64_t>(maps[m].start_goal.size()) - 1));
        report.queries.emplace_back(m, p);
    }

    std::vector<int> scales = config.scales;
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

    for (int k : scales) {
        std::vector<SearchStats> a_stats(report.queries.size());
        std::vector<SearchStats> g_stats(report.queries.size());
        parallel_for(report.queries.size(), config.workers, [&](std::size_t i) {
            const auto [m, p] = report.queries[i];
            const Environment env = scale_environment(maps[m].environment, k);
            const QueryPair q{scale_point(maps[m].start_goal[p].start, k), scale_point(maps[m].start_goal[p].goal, k)};
            const std::string id = sample_id(maps[m], p) + "@x" + std::to_string(k);
            a_stats[i] = astar(env, q.start, q.goal, config.heuristic).stats;
            const auto raw = propose_or_fallback(source, env, q, id, nullptr);
            g_stats[i] = llm_astar_search(env, q.start, q.goal, sanitize_targets(env, raw, q.start, q.goal),
                                          config.heuristic)
                             .stats;
        });
        auto mean = [](const std::vector<SearchStats>& s, auto field) {
            double total = 0.0;
            for (const SearchStats& x : s) total += static_cast<double>(x.*field);
            return total / static_cast<double>(s.size());
        };
        report.astar.push_back({k, mean(a_stats, &SearchStats::expansions), mean(a_stats, &SearchStats::peak_storage)});
        report.guided.push_back({k, mean(g_stats, &SearchStats::expansions), mean(g_stats, &SearchStats::peak_storage)});
    }
    report.astar_growth = growth_factor(report.astar);
    report.guided_growth = growth_factor(report.guided);
    return report;
}

Json scale_report_to_json(const ScaleReport& report) {
    Json j = Json::object();
    Json queries = Json::array();
    for (const auto& [m, p] : report.queries) queries.push_back(Json::array({m, p}));
    j["queries"] = std::move(queries);
    auto series = [](const std::vector<ScalePoint>& points, const std::vector<GrowthRow>& growth) {
        Json out = Json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            Json row = Json::object();
            row["scale"] = points[i].scale;
            row["mean_ops"] = points[i].mean_ops;
            row["mean_storage"] = points[i].mean_storage;
            row["ops_growth"] = growth[i].ops_growth;
            row["storage_growth"] = growth[i].storage_growth;
            row["combined"] = growth[i].combined;
            out.push_back(std::move(row));
        }
        return out;
    };
    j["astar"] = series(report.astar, report.astar_growth);
    j["llm_astar"] = series(report.guided, report.guided_growth);
    return j;
}

std::string scale_report_to_table(const ScaleReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%5s  %12s  %12s  %10s  %12s  %12s  %10s\n", "scale", "A* ops", "A* storage",
                  "A* growth", "LLM-A* ops", "LLM-A* stor.", "LLM growth");
    out += line;
    for (std::size_t i = 0; i < report.astar.size(); ++i) {
        std::snprintf(line, sizeof line, "%5d  %12.1f  %12.1f  %10.2f  %12.1f  %12.1f  %10.2f\n", report.astar[i].scale,
                      report.astar[i].mean_ops, report.astar[i].mean_storage, report.astar_growth[i].combined,
                      report.guided[i].mean_ops, report.guided[i].mean_storage, report.guided_growth[i].combined);
        out += line;
    }
    return out;
}

}  // namespace llmastar
