#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "opmpc/bench.hpp"
#include "opmpc/errors.hpp"
#include "opmpc/instances.hpp"
#include "opmpc/io.hpp"
#include "opmpc/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace opmpc;
using namespace opmpc::testing;

TEST_CASE("oracle on the worked example") {
  const Instance inst = figure_instance();
  const Problem pr(inst, figure_query(10, {1, 1}));
  const Itinerary best = oracle_solve(pr);
  CHECK(best.score == 0.5 + 0.9);
  // {p2, p3} and {p3, p4} tie on score and cost; the smaller sequence wins.
  CHECK(best.sequence == std::vector<PoiId>{kP2, kP3});
  CHECK(best.cost == 9);
  CHECK(count_cap_respecting_subsets(pr) == 9);  // (1 + 2) * (1 + 2)
  CHECK_THROWS_AS(oracle_solve(pr, OracleOptions{4}), OracleLimitExceeded);
  CHECK_THROWS_AS(oracle_solve(Problem(inst, figure_query(6, {1, 1}))), InfeasibleQuery);
}

TEST_CASE("oracle agrees with sequence enumeration") {
  for (const auto& c : small_corpus(60, 11000, 10)) {
    const Problem pr(c.instance, c.query);
    if (!pr.has_feasible_route()) continue;
    const Itinerary best = oracle_solve(pr);
    REQUIRE(best.score == brute_optimum(c.instance, c.query));
    REQUIRE(check_feasible(pr, best).ok());
  }
}

TEST_CASE("grid generator structure") {
  GridSpec spec;
  spec.side = 5;
  spec.pois.poi_count = 7;
  spec.pois.category_count = 3;
  spec.seed = 5;
  const Instance g = gen_grid(spec);
  CHECK(g.graph().nodes.size() == 25);
  CHECK(g.graph().edges.size() == 40);  // 2 * 5 * 4
  CHECK(g.poi_count() == 7);
  std::set<NodeId> nodes;
  for (const Poi& p : g.pois()) {
    nodes.insert(p.node);
    CHECK(p.category < 3);
    CHECK(p.visit_seconds >= spec.pois.visit_min);
    CHECK(p.visit_seconds <= spec.pois.visit_max);
    CHECK(p.score >= spec.pois.score_min);
    CHECK(p.score <= spec.pois.score_max);
  }
  CHECK(nodes.size() == 7);
  CHECK(g == gen_grid(spec));
  spec.seed = 6;
  CHECK_FALSE(g == gen_grid(spec));

  spec.side = 0;
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec.side = 2;
  spec.pois.poi_count = 5;  // more POIs than nodes
  CHECK_THROWS_AS(spec.validate(), InputError);
}

TEST_CASE("spider generator structure") {
  SpiderSpec spec;
  spec.sides = 6;
  spec.levels = 3;
  spec.pois.poi_count = 4;
  spec.seed = 1;
  const Instance s = gen_spider(spec);
  CHECK(s.graph().nodes.size() == 18);
  CHECK(s.graph().edges.size() == 18 + 12);  // rings + radials
  Seconds innermost = -1;
  for (const Edge& e : s.graph().edges) {
    if (e.u < 6 && e.v < 6) innermost = e.seconds;
  }
  CHECK(innermost == 8);
  for (const Edge& e : s.graph().edges) {
    if (e.u / 6 == 2 && e.v / 6 == 2) CHECK(e.seconds == 24);
  }
  CHECK(s == gen_spider(spec));
}

TEST_CASE("named streams are independent") {
  CHECK(derive_seed(1, "placement") != derive_seed(1, "attributes"));
  CHECK(derive_seed(1, "placement") == derive_seed(1, "placement"));
  CHECK(derive_seed(1, "placement") != derive_seed(2, "placement"));
}

TEST_CASE("query generator respects the budget") {
  GridSpec spec;
  spec.side = 10;
  spec.pois.poi_count = 20;
  const Instance g = gen_grid(spec);
  const auto qs = gen_queries(g, QuerySpec{900, {2, 2, 2, 2}, 25, 3});
  REQUIRE(qs.size() == 25);
  for (const Query& q : qs) {
    CHECK(Problem(g, q).direct() < 900);
  }
  CHECK(qs == gen_queries(g, QuerySpec{900, {2, 2, 2, 2}, 25, 3}));
  CHECK_THROWS_AS(gen_queries(g, QuerySpec{0, {2, 2, 2, 2}, 5, 3}), InputError);
  CHECK_THROWS_AS(gen_queries(g, QuerySpec{900, {2, 2}, 5, 3}), InputError);
}

TEST_CASE("instance and query JSON round trip") {
  const Instance inst = figure_instance();
  const std::string text = instance_to_json(inst);
  CHECK(instance_from_json(text) == inst);
  CHECK(instance_to_json(instance_from_json(text)) == text);

  const auto c = random_case(3);
  CHECK(instance_from_json(instance_to_json(c.instance)) == c.instance);
  CHECK(query_from_json(query_to_json(c.query)) == c.query);

  const auto path = std::filesystem::temp_directory_path() / "opmpc_roundtrip.json";
  save_instance(c.instance, path);
  CHECK(load_instance(path) == c.instance);
  std::filesystem::remove(path);
}

TEST_CASE("malformed JSON is reported with its field") {
  auto message = [](const std::string& text) {
    try {
      instance_from_json(text, "in.json");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{").find("in.json") == 0);
  CHECK(message(R"({"nodes":[1],"edges":[],"categories":1})").find("pois: missing key") != std::string::npos);
  CHECK(message(R"({"nodes":[1],"edges":[[1,1]],"categories":1,"pois":[]})").find("edges[0]") != std::string::npos);
  CHECK(message(R"({"nodes":[1],"edges":[],"categories":1,"pois":[],"x":2})").find("x: unknown key") != std::string::npos);
  CHECK(message(R"({"nodes":[1,2],"edges":[[1,2,-3]],"categories":1,"pois":[]})").find("edges[0][2]") != std::string::npos);
  CHECK_THROWS_AS(query_from_json(R"({"s":1,"d":2,"t_max_seconds":0,"max_k":[1]})"), InputError);
}

TEST_CASE("bench rows are deterministic and complete") {
  GridSpec gs;
  gs.side = 8;
  gs.pois.poi_count = 16;
  gs.pois.category_count = 2;
  gs.pois.visit_min = 30;
  gs.pois.visit_max = 120;
  gs.seed = 2;
  const Instance inst = gen_grid(gs);
  BenchSpec spec;
  spec.instance_id = "g8";
  spec.t_max = 1200;
  spec.query_count = 5;
  spec.seed = 9;
  spec.sweep = SweepKind::cut_factor;
  spec.points = {1.0, 1.5};
  spec.with_oracle = true;
  spec.workers = 3;
  const auto rows = run_bench(inst, spec);
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].query_id == i % 5);
    CHECK(rows[i].cut_factor == (i < 5 ? 1.0 : 1.5));
    CHECK(rows[i].score >= rows[i].greedy_score);
    REQUIRE(rows[i].oracle_score);
    REQUIRE(rows[i].alpha);
    CHECK(rows[i].score >= *rows[i].alpha * *rows[i].oracle_score * (1 - 1e-12));
    CHECK(rows[i].score * rows[i].cut_factor >= *rows[i].oracle_score * (1 - 1e-12));
  }
  spec.workers = 1;
  const auto again = run_bench(inst, spec);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].score == rows[i].score);
    CHECK(again[i].expanded == rows[i].expanded);
    CHECK(again[i].alpha == rows[i].alpha);
  }

  std::ostringstream csv;
  write_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(text.rfind(std::string(csv_header()) + "\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);

  spec.points.clear();
  CHECK_THROWS_AS(run_bench(inst, spec), InputError);
  spec.points = {0.5};
  CHECK_THROWS_AS(run_bench(inst, spec), InputError);
}

TEST_CASE("category-count sweep relabels POIs") {
  GridSpec gs;
  gs.side = 6;
  gs.pois.poi_count = 10;
  gs.pois.visit_min = 10;
  gs.pois.visit_max = 60;
  const Instance inst = gen_grid(gs);
  BenchSpec spec;
  spec.t_max = 900;
  spec.query_count = 3;
  spec.sweep = SweepKind::category_count;
  spec.points = {1, 3};
  spec.cap = 1;
  const auto rows = run_bench(inst, spec);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) CHECK(r.score >= r.greedy_score);
}
