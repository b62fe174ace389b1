#include "opmpc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "opmpc/errors.hpp"
#include "opmpc/pathing.hpp"

namespace opmpc {

std::uint64_t count_cap_respecting_subsets(const Problem& problem) {
  const Instance& inst = problem.instance();
  std::vector<std::uint64_t> members(inst.category_count(), 0);
  for (const Poi& p : inst.pois()) ++members[p.category];

  constexpr auto kSaturated = std::numeric_limits<std::uint64_t>::max();
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
  };
  std::uint64_t total = 1;
  for (CategoryId k = 0; k < members.size(); ++k) {
    // sum_{j <= cap} C(members, j), saturating.
    std::uint64_t ways = 0;
    std::uint64_t binom = 1;
    const std::uint64_t limit = std::min<std::uint64_t>(problem.cap(k), members[k]);
    for (std::uint64_t j = 0; j <= limit; ++j) {
      if (j > 0) {
        // binom * (n - j + 1) / j stays exact in this order.
        const std::uint64_t num = members[k] - j + 1;
        binom = binom == kSaturated ? kSaturated : mul(binom, num) / j;
      }
      ways = ways > kSaturated - binom ? kSaturated : ways + binom;
    }
    total = mul(total, ways);
  }
  return total;
}

namespace {

struct Enumerator {
  const Problem& problem;
  std::vector<std::uint32_t> used;
  std::vector<PoiId> chosen;
  Itinerary best;

  void consider() {
    OrderedPath path = best_order(problem, chosen);
    if (path.cost > problem.t_max()) return;
    const double score = itinerary_score(problem.instance(), path.order);
    const bool better =
        score > best.score ||
        (score == best.score &&
         (path.cost < best.cost ||
          (path.cost == best.cost && path.order < best.sequence)));
    if (better) best = Itinerary{std::move(path.order), path.cost, score};
  }

  void walk(PoiId next) {
    if (next == problem.poi_count()) {
      consider();
      return;
    }
    walk(next + 1);
    const CategoryId k = problem.poi(next).category;
    if (used[k] < problem.cap(k)) {
      ++used[k];
      chosen.push_back(next);
      walk(next + 1);
      chosen.pop_back();
      --used[k];
    }
  }
};

}  // namespace

Itinerary oracle_solve(const Problem& problem, const OracleOptions& options) {
  if (!problem.has_feasible_route()) {
    throw InfeasibleQuery("c(s, d) = " + std::to_string(problem.direct()) +
                          " exceeds t_max = " + std::to_string(problem.t_max()));
  }
  const std::uint64_t subsets = count_cap_respecting_subsets(problem);
  if (subsets > options.max_subsets) {
    throw OracleLimitExceeded(std::to_string(subsets) +
                              " cap-respecting subsets exceed the oracle limit of " +
                              std::to_string(options.max_subsets));
  }
  Enumerator e{problem, std::vector<std::uint32_t>(problem.instance().category_count(), 0),
               {}, Itinerary{{}, problem.direct(), 0.0}};
  e.walk(0);
  return e.best;
}

}  // namespace opmpc
