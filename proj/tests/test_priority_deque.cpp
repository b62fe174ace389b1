#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "opmpc/priority_deque.hpp"

using opmpc::PriorityDeque;

TEST_CASE("priority deque tracks a multiset under random operations") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    PriorityDeque<int, std::less<int>> pq;
    std::multiset<int> ref;
    for (int step = 0; step < 400; ++step) {
      const int op = static_cast<int>(rng() % 4);
      if (op <= 1 || ref.empty()) {
        const int v = static_cast<int>(rng() % 50);
        pq.push(v);
        ref.insert(v);
      } else if (op == 2) {
        REQUIRE(pq.pop_min() == *ref.begin());
        ref.erase(ref.begin());
      } else {
        REQUIRE(pq.pop_max() == *ref.rbegin());
        ref.erase(std::prev(ref.end()));
      }
      REQUIRE(pq.size() == ref.size());
      REQUIRE(pq.valid());
      if (!ref.empty()) {
        REQUIRE(pq.min() == *ref.begin());
        REQUIRE(pq.max() == *ref.rbegin());
      }
    }
  }
}

TEST_CASE("priority deque edge cases") {
  PriorityDeque<int, std::less<int>> pq;
  CHECK(pq.empty());
  pq.push(3);
  CHECK(pq.min() == 3);
  CHECK(pq.max() == 3);
  pq.push(1);
  CHECK(pq.min() == 1);
  CHECK(pq.max() == 3);
  CHECK(pq.pop_max() == 3);
  CHECK(pq.pop_min() == 1);
  CHECK(pq.empty());
  for (int i = 0; i < 7; ++i) pq.push(i);
  pq.clear();
  CHECK(pq.size() == 0);
}
