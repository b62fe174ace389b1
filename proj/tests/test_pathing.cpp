#include <doctest.h>

#include "opmpc/pathing.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace opmpc;
using namespace opmpc::testing;

TEST_CASE("best_order on the worked example") {
  const Instance inst = figure_instance();
  const Problem pr(inst, figure_query());
  const std::vector<PoiId> set{kP2, kP3};
  const auto best = best_order(pr, set);
  CHECK(best.order == std::vector<PoiId>{kP2, kP3});
  CHECK(best.cost == 9);
  // The other order goes s -> p3 -> p2 -> d: 4 + 1 + 2 + 1 + 5.
  CHECK(itinerary_cost(pr, std::vector<PoiId>{kP3, kP2}) == 13);

  const auto empty = best_order(pr, {});
  CHECK(empty.order.empty());
  CHECK(empty.cost == 7);

  const std::vector<PoiId> three{kP4, kP3, kP2};
  CHECK(best_order(pr, three).order == std::vector<PoiId>{kP2, kP3, kP4});
  CHECK(best_order(pr, three).cost == 10);
}

TEST_CASE("best_order matches permutation enumeration, ties included") {
  for (const auto& c : small_corpus(20, 3000, 7)) {
    const Problem pr(c.instance, c.query);
    const FloydClosure fw(c.instance.graph());
    const std::size_t n = c.instance.poi_count();
    for (std::uint32_t mask = 1; mask < (1u << n); mask += 3) {
      const auto set = mask_members(mask, n);
      const auto dp = best_order(pr, set);
      const auto ref = permutation_best(c.instance, fw, c.query, set);
      REQUIRE(dp.cost == ref.cost);
      REQUIRE(dp.order == ref.order);
    }
  }
}

TEST_CASE("ties resolve to the smallest sequence") {
  // Two POIs on the same node: both orders cost the same.
  TravelGraph g{{0, 1, 2}, {{0, 1, 5}, {1, 2, 5}}};
  const Instance inst(g, {{0, 1, 0, 1.0, 2}, {1, 1, 0, 1.0, 3}}, 1);
  const Problem pr(inst, Query{0, 2, 100, {2}});
  const std::vector<PoiId> set{1, 0};
  CHECK(best_order(pr, set).order == std::vector<PoiId>{0, 1});
  CHECK(best_order(pr, set).cost == 15);
}

TEST_CASE("cache returns the same paths and counts hits") {
  const auto c = random_case(77);
  const Problem pr(c.instance, c.query);
  BestOrderCache cache(pr, 4);
  const std::vector<PoiId> a{0, 1}, b{1, 2}, d{0, 2};
  CHECK(cache.get(a) == best_order(pr, a));
  CHECK(cache.get(a) == best_order(pr, a));
  CHECK(cache.hits() == 1);
  CHECK(cache.misses() == 1);
  cache.get(b);
  cache.get(d);
  cache.get(std::vector<PoiId>{3});
  cache.get(std::vector<PoiId>{0});  // over capacity: cleared, still correct
  CHECK(cache.size() <= 4);
  CHECK(cache.get(d) == best_order(pr, d));
}
