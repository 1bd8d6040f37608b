#include <regex>

#include "doctest.h"
#include "llmastar/harness.hpp"
#include "support.hpp"

using namespace llmastar;

namespace {

std::vector<MapRecord> small_dataset() {
    GenParams p;
    p.seed = 3;
    p.n_pairs = 5;
    return generate_dataset(p, 6);
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("astar bench is its own baseline") {
    const auto maps = small_dataset();
    BenchConfig cfg;
    cfg.workers = 2;
    const auto r = run_bench(maps, cfg, nullptr);
    REQUIRE(r.report.rows.size() == 1);
    const ReportRow& row = r.report.rows[0];
    CHECK(row.operation_ratio == 100.0);
    CHECK(row.storage_ratio == 100.0);
    CHECK(row.relative_path_length == 100.0);
    CHECK(row.valid_path_ratio == 100.0);
    CHECK(r.report.samples == 30);
    CHECK(r.runs[7].sample_id == "map1/pair2");
}

TEST_CASE("bench rows for every algorithm") {
    const auto maps = small_dataset();
    OracleSource oracle(3);
    BenchConfig cfg;
    cfg.algorithm = Algorithm::wastar;
    const auto wa = run_bench(maps, cfg, nullptr);
    REQUIRE(wa.report.rows.size() == 2);
    CHECK(wa.report.rows[1].algorithm == "wastar(w0=2.00,decay=0.99)");
    CHECK(wa.report.rows[1].valid_path_ratio == 100.0);
    CHECK(*wa.report.rows[1].relative_path_length >= 100.0);

    cfg.algorithm = Algorithm::llm_astar;
    const auto guided = run_bench(maps, cfg, &oracle);
    CHECK(guided.report.rows[1].algorithm == "llm_astar[oracle:3]");
    CHECK(guided.report.rows[1].valid_path_ratio == 100.0);
    CHECK(*guided.report.rows[1].operation_ratio < 100.0);

    cfg.algorithm = Algorithm::llm_only;
    const auto only = run_bench(maps, cfg, &oracle);
    CHECK_FALSE(only.report.rows[1].operation_ratio.has_value());
    CHECK(only.report.rows[1].valid_path_ratio > 0.0);
    CHECK(only.report.rows[1].valid_path_ratio < 100.0);

    CHECK_THROWS_AS(run_bench(maps, cfg, nullptr), ConfigError);
    cfg.scale = 0;
    CHECK_THROWS_AS(run_bench(maps, cfg, &oracle), ConfigError);
}

TEST_CASE("bench is independent of the worker count") {
    const auto maps = small_dataset();
    OracleSource oracle(2);
    BenchConfig cfg;
    cfg.algorithm = Algorithm::llm_astar;
    cfg.workers = 1;
    const auto one = report_to_json(run_bench(maps, cfg, &oracle).report).dump();
    cfg.workers = 4;
    CHECK(report_to_json(run_bench(maps, cfg, &oracle).report).dump() == one);
}

TEST_CASE("provider failures fall back to [start, goal]") {
    struct Failing final : WaypointSource {
        std::vector<Point> propose(const Environment&, Point, Point) override { throw ProviderError("offline"); }
        std::string name() const override { return "failing"; }
    } failing;
    struct Missing final : WaypointSource {
        std::vector<Point> propose(const Environment&, Point, Point) override { throw CacheMissError("cold"); }
        std::string name() const override { return "missing"; }
    } missing;
    const auto maps = small_dataset();
    BenchConfig cfg;
    cfg.algorithm = Algorithm::llm_astar;
    const auto r = run_bench(maps, cfg, &failing);
    CHECK(r.report.rows[1].valid_path_ratio == 100.0);
    CHECK(r.warnings.size() == 30);
    CHECK_THROWS_AS(run_bench(maps, cfg, &missing), CacheMissError);
}

TEST_CASE("scale sweep") {
    const auto maps = small_dataset();
    OracleSource oracle(3);
    ScaleConfig cfg;
    cfg.scales = {1};
    cfg.queries = 4;
    const auto one = run_scale(maps, cfg, oracle);
    REQUIRE(one.astar_growth.size() == 1);
    CHECK(one.astar_growth[0].combined == 1.0);
    CHECK(one.guided_growth[0].combined == 1.0);

    const Environment open({0, 20}, {0, 12}, {}, {});
    const std::vector<MapRecord> empty_maps{{0, open, {{{1, 1}, {18, 10}}, {{2, 9}, {17, 3}}}}};
    cfg.scales = {1, 2, 3, 4, 5};
    const auto sweep = run_scale(empty_maps, cfg, oracle);
    for (std::size_t i = 1; i < sweep.astar.size(); ++i) CHECK(sweep.astar[i].mean_ops >= sweep.astar[i - 1].mean_ops);
    const Json j = scale_report_to_json(sweep);
    CHECK(j["astar"].size() == 5);
    CHECK(j["llm_astar"][0]["combined"] == 1.0);
    cfg.scales = {2, 3};
    CHECK_THROWS_AS(run_scale(maps, cfg, oracle), MetricError);
}

TEST_CASE("svg rendering") {
    const auto env = testsupport::demo_env();
    const auto bare = render_svg(env, nullptr, {5, 5}, {20, 20});
    CHECK(count(bare, "class=\"barrier\"") == 3);
    CHECK(count(bare, "class=\"closed\"") == 0);
    CHECK(count(bare, "class=\"path\"") == 0);
    CHECK(count(bare, "class=\"start\"") == 1);
    CHECK(count(bare, "class=\"goal\"") == 1);

    const auto r = astar(env, {5, 5}, {20, 20});
    const auto svg = render_svg(env, &r, {5, 5}, {20, 20});
    CHECK(count(svg, "class=\"closed\"") == r.closed().size());
    CHECK(count(svg, "class=\"closed\"") == r.stats.expansions - 1);
    CHECK(count(svg, "class=\"path\"") == 1);
    CHECK(svg.rfind("<?xml", 0) == 0);

    const auto targets = sanitize_targets(env, std::vector<Point>{{5, 5}, {26, 9}, {25, 23}, {20, 20}}, {5, 5}, {20, 20});
    const auto guided = llm_astar_search(env, {5, 5}, {20, 20}, targets);
    const auto star = render_svg(env, &guided, {5, 5}, {20, 20}, &targets);
    CHECK(count(star, "class=\"waypoint\"") == 4);

    // Every opened tag is closed or self-closing.
    const std::regex open_tag("<([a-z]+)[ >]");
    std::size_t opened = 0, closed = 0;
    for (std::sregex_iterator it(star.begin(), star.end(), open_tag), end; it != end; ++it) ++opened;
    closed = count(star, "/>") + count(star, "</");
    CHECK(opened == closed);
}
