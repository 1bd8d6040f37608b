// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "llmastar/harness.hpp"
#include "support.hpp"

using namespace llmastar;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<MapRecord>& efficiency_dataset() {
    static const std::vector<MapRecord> maps = [] {
        GenParams p;
        p.seed = 0;
        p.n_pairs = 10;
        return generate_dataset(p, 100);
    }();
    return maps;
}

Outcome optimality_oracle() {
    Rng rng(1);
    int compared = 0;
    int unreachable = 0;
    double worst = 0.0;
    for (int m = 0; m < 200; ++m) {
        const auto env = testsupport::random_env(rng, 20, 12, 2, 4);
        const Point s = testsupport::random_free_point(rng, env);
        const Point g = testsupport::random_free_point(rng, env);
        const double want = testsupport::ucs_cost(env, s, g);
        const auto got = astar(env, s, g);
        if (want < 0.0) {
            if (got.found()) return {false, fmt("map %d: astar found a path the oracle could not", m)};
            ++unreachable;
            continue;
        }
        if (!got.found()) return {false, fmt("map %d: astar found no path, oracle cost %.6f", m, want)};
        worst = std::max(worst, std::abs(*got.cost - want));
        ++compared;
    }
    return {worst <= 1e-9, fmt("%d solvable maps, %d unsolvable agreed, max |diff| = %.3g", compared, unreachable, worst)};
}

Outcome degenerate_equivalence() {
    GenParams p;
    p.seed = 2;
    const auto maps = generate_dataset(p, 10);
    int checked = 0;
    for (const MapRecord& m : maps) {
        for (const QueryPair& q : m.start_goal) {
            const auto guided = llm_astar_search(m.environment, q.start, q.goal,
                                                 sanitize_targets(m.environment, std::vector<Point>{}, q.start, q.goal));
            const auto wa = weighted_astar(m.environment, q.start, q.goal, HeuristicKind::euclidean, 2.0, 1.0);
            if (guided.expansion_order != wa.expansion_order) {
                return {false, fmt("map %d: expansion sequences differ", m.id)};
            }
            ++checked;
        }
    }
    return {checked == 100, fmt("%d samples, expansion sequences identical", checked)};
}

Outcome guided_efficiency() {
    OracleSource oracle(3);
    BenchConfig cfg;
    cfg.algorithm = Algorithm::llm_astar;
    const auto r = run_bench(efficiency_dataset(), cfg, &oracle);
    const ReportRow& row = r.report.rows.at(1);
    const bool ok = *row.operation_ratio < 90.0 && *row.storage_ratio < 95.0 && *row.relative_path_length <= 105.0;
    return {ok, fmt("%zu samples: ops %.2f%% (<90), storage %.2f%% (<95), path %.2f%% (<=105)", r.report.samples,
                    *row.operation_ratio, *row.storage_ratio, *row.relative_path_length)};
}

struct Failing final : WaypointSource {
    std::vector<Point> propose(const Environment&, Point, Point) override { throw ProviderError("unavailable"); }
    std::string name() const override { return "failing"; }
};

struct Noise final : WaypointSource {
    std::vector<Point> propose(const Environment& env, Point, Point) override {
        Rng rng(std::hash<std::string>{}(environment_to_json(env).dump()));
        std::vector<Point> out;
        for (int i = 0; i < 4; ++i) out.push_back({rng.uniform(-5, 55), rng.uniform(-5, 35)});
        return out;
    }
    std::string name() const override { return "noise"; }
};

Outcome validity_guarantee() {
    OracleSource oracle(3);
    Failing failing;
    Noise noise;
    std::string detail;
    bool ok = true;
    auto check = [&](const std::string& label, Algorithm a, WaypointSource* source) {
        BenchConfig cfg;
        cfg.algorithm = a;
        const auto r = run_bench(efficiency_dataset(), cfg, source);
        const double v = r.report.rows.back().valid_path_ratio;
        ok = ok && v == 100.0 && r.report.rows.front().valid_path_ratio == 100.0;
        detail += fmt("%s %.2f%%; ", label.c_str(), v);
    };
    check("astar", Algorithm::astar, nullptr);
    check("wastar", Algorithm::wastar, nullptr);
    check("llm_astar[oracle]", Algorithm::llm_astar, &oracle);
    check("llm_astar[fallback]", Algorithm::llm_astar, &failing);
    check("llm_astar[noise]", Algorithm::llm_astar, &noise);
    return {ok, detail};
}

Outcome scalability_shape() {
    OracleSource oracle(3);
    ScaleConfig cfg;
    cfg.queries = 10;
    cfg.seed = 0;
    const auto r = run_scale(efficiency_dataset(), cfg, oracle);
    const GrowthRow& a10 = r.astar_growth.at(9);
    const GrowthRow& g10 = r.guided_growth.at(9);
    const GrowthRow& g5 = r.guided_growth.at(4);
    const bool combined = g10.combined < a10.combined;
    const bool super = a10.ops_growth > 10.0;
    const bool near_linear = g10.ops_growth <= 2.0 * g5.ops_growth;
    return {combined && super && near_linear,
            fmt("combined@10 LLM-A* %.2f vs A* %.2f [%s]; A* ops growth@10 %.2f (>10) [%s]; "
                "LLM-A* ops growth @10/@5 = %.2f/%.2f = %.2f (<=2) [%s]",
                g10.combined, a10.combined, combined ? "ok" : "no", a10.ops_growth, super ? "ok" : "no",
                g10.ops_growth, g5.ops_growth, g10.ops_growth / g5.ops_growth, near_linear ? "ok" : "no")};
}

Outcome metric_units() {
    bool ok = true;
    ok = ok && std::abs(geometric_mean(std::vector<double>{0.5, 2.0}) - 1.0) <= 1e-12;
    ok = ok && std::abs(geometric_mean(std::vector<double>{0.25}) - 0.25) <= 1e-12;
    const std::vector<double> r{0.3, 1.7, 2.2, 0.9};
    const double g = geometric_mean(r);
    std::vector<double> scaled = r;
    for (double& x : scaled) x *= 3.5;
    ok = ok && std::abs(geometric_mean(scaled) - 3.5 * g) <= 1e-12 * 3.5 * g;

    std::vector<RunRecord> runs;
    for (int i = 0; i < 5; ++i) {
        RunRecord rec;
        rec.sample_id = std::to_string(i);
        rec.stats = SearchStats{static_cast<std::uint64_t>(10 + i), static_cast<std::uint64_t>(30 + 7 * i), 0, 0};
        rec.valid = true;
        runs.push_back(rec);
    }
    const auto self = efficiency_ratios(runs, runs);
    ok = ok && self.operation_ratio == 100.0 && self.storage_ratio == 100.0;
    const auto growth = growth_factor(std::vector<ScalePoint>{{1, 12.5, 40.0}, {2, 30.0, 90.0}});
    ok = ok && growth[0].ops_growth == 1.0 && growth[0].storage_growth == 1.0 && growth[0].combined == 1.0;
    return {ok, "geometric mean identities, self-comparison (100, 100), scale-1 growth (1, 1, 1)"};
}

Outcome prompt_fidelity() {
    const Environment env({0, 50}, {0, 30}, {Barrier::horizontal(12, 5, 30)},
                          {Barrier::vertical(35, 0, 20), Barrier::vertical(8, 15, 28)});
    std::string detail;
    bool ok = true;
    for (PromptStyle style : {PromptStyle::few_shot, PromptStyle::cot, PromptStyle::repe}) {
        const std::string name(style_name(style));
        const std::string want = slurp(std::filesystem::path(GOLDEN_DIR) / (name + ".txt"));
        const std::string got = render_prompt(style, env, {3, 4}, {40, 25});
        const bool same = !want.empty() && got == want &&
                          got.find("\nGenerated Path: [[5, 5], [26, 9], [25, 23], [20, 20]]\n") != std::string::npos;
        ok = ok && same;
        detail += name + (same ? " match; " : " MISMATCH; ");
    }
    return {ok, detail};
}

Outcome parser_roundtrip() {
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        std::vector<Point> pts;
        for (int k = static_cast<int>(rng.uniform(0, 20)); k > 0; --k) {
            pts.push_back({rng.uniform(-1000000, 1000000), rng.uniform(-1000000, 1000000)});
        }
        if (parse_path("Generated Path: " + format_path(pts)) != pts) return {false, fmt("list %d did not round-trip", i)};
    }
    auto kind = [](std::string_view text) {
        try {
            parse_path(text);
        } catch (const ParseError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    const bool missing = kind("no path here") == static_cast<int>(ParseError::Kind::marker_missing);
    const bool unbalanced = kind("Generated Path: [[1, 2], [3, 4]") == static_cast<int>(ParseError::Kind::malformed_list);
    const bool non_numeric = kind("Generated Path: [[1, two]]") == static_cast<int>(ParseError::Kind::malformed_list);
    return {missing && unbalanced && non_numeric, "1000 lists round-trip; marker-missing and malformed-list raised"};
}

Outcome geometry_exactness() {
    Rng rng(9);
    int disagreements = 0;
    int hits = 0;
    for (int i = 0; i < 100000; ++i) {
        // Half the pairs come from a tiny box so touching and collinear cases occur often.
        const Coord r = (i % 2 == 0) ? 4 : 1000;
        const Point a{rng.uniform(-r, r), rng.uniform(-r, r)};
        const Point b{rng.uniform(-r, r), rng.uniform(-r, r)};
        const Point c{rng.uniform(-r, r), rng.uniform(-r, r)};
        const Point d{rng.uniform(-r, r), rng.uniform(-r, r)};
        const bool want = testsupport::dense_intersect(a, b, c, d);
        hits += want ? 1 : 0;
        disagreements += segments_intersect(a, b, c, d) != want ? 1 : 0;
    }
    return {disagreements == 0, fmt("100000 pairs, %d intersecting, %d disagreements", hits, disagreements)};
}

int run_cli(const std::string& args, const std::filesystem::path& dir) {
    const std::string cmd = "cd '" + dir.string() + "' && '" LLMASTAR_BIN "' " + args + " >>cli.log 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome reproducibility() {
    const auto dir = testsupport::temp_dir("llmastar-accept");
    testsupport::FixtureServer server(testsupport::midpoint_answer);
    const std::string provider = " --base-url " + server.base_url() + " --model fixture --cache cache.json";
    if (run_cli("gen --maps 5 --pairs 4 --seed 3 --out d.json", dir) != 0) return {false, "gen failed"};
    if (run_cli("bench --dataset d.json --algo llm_astar --provider live --out-json live.json" + provider, dir) != 0) {
        return {false, "live bench failed: " + slurp(dir / "cli.log")};
    }
    const int live_requests = server.requests();
    if (run_cli("replay --dataset d.json --algo llm_astar --out-json replay.json" + provider, dir) != 0) {
        return {false, "replay failed: " + slurp(dir / "cli.log")};
    }
    const int replay_requests = server.requests() - live_requests;
    const std::string live = slurp(dir / "live.json");
    const bool same = !live.empty() && live == slurp(dir / "replay.json");
    std::filesystem::remove_all(dir);
    return {same && replay_requests == 0 && live_requests > 0,
            fmt("live run %d requests; replay %d requests; report JSON %s", live_requests, replay_requests,
                same ? "byte-identical" : "DIFFERS")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"optimality oracle", optimality_oracle},
        {"degenerate equivalence", degenerate_equivalence},
        {"guided efficiency", guided_efficiency},
        {"validity guarantee", validity_guarantee},
        {"scalability shape", scalability_shape},
        {"metric unit suite", metric_units},
        {"prompt fidelity", prompt_fidelity},
        {"parser round-trip", parser_roundtrip},
        {"geometry exactness", geometry_exactness},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %-22s %.1fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                    o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
