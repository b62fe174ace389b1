#pragma once

#include <cstdint>

#include "opmpc/model.hpp"

namespace opmpc {

struct OracleOptions {
  // Refuse instances with more cap-respecting POI subsets than this.
  std::uint64_t max_subsets = std::uint64_t{1} << 16;
};

// Number of POI subsets that respect every category cap (empty set included).
std::uint64_t count_cap_respecting_subsets(const Problem& problem);

// Brute force: every cap-respecting subset, each ordered by best_order().
// Ties on score go to the lower cost, then to the lexicographically smaller
// sequence. Throws OracleLimitExceeded when the subset count exceeds the
// limit and InfeasibleQuery when c(s, d) > t_max.
Itinerary oracle_solve(const Problem& problem, const OracleOptions& options = {});

}  // namespace opmpc
