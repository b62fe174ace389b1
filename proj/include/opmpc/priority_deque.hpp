#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace opmpc {

// Double-ended priority queue backed by an interval heap.
//
// Node i owns slots 2i (low end) and 2i+1 (high end); the low ends form a
// min-heap, the high ends a max-heap, and every node's interval lies inside
// its parent's. The last node may hold a single element, which then counts
// as both ends. push, pop_max and pop_min are O(log n); max and min are O(1).
//
// `Less` is a strict weak order; max() is the greatest element under it.
template <class T, class Less = std::less<T>>
class PriorityDeque {
 public:
  PriorityDeque() = default;
  explicit PriorityDeque(Less less) : less_(std::move(less)) {}

  bool empty() const { return slots_.empty(); }
  std::size_t size() const { return slots_.size(); }
  void clear() { slots_.clear(); }

  const T& min() const {
    assert(!empty());
    return slots_[0];
  }
  const T& max() const {
    assert(!empty());
    return slots_.size() == 1 ? slots_[0] : slots_[1];
  }

  void push(T value) {
    slots_.push_back(std::move(value));
    const std::size_t idx = slots_.size() - 1;
    if (idx % 2 == 1) {
      if (less_(slots_[idx], slots_[idx - 1])) {
        std::swap(slots_[idx], slots_[idx - 1]);
        sift_up_low(idx - 1);
      } else {
        sift_up_high(idx);
      }
      return;
    }
    const std::size_t node = idx / 2;
    if (node == 0) return;
    const std::size_t parent = (node - 1) / 2;
    if (less_(slots_[idx], slots_[2 * parent])) {
      sift_up_low(idx);
    } else if (less_(slots_[2 * parent + 1], slots_[idx])) {
      sift_up_high(idx);
    }
  }

  T pop_min() {
    assert(!empty());
    T result = std::move(slots_[0]);
    T moving = std::move(slots_.back());
    slots_.pop_back();
    const std::size_t n = slots_.size();
    if (n == 0) return result;

    std::size_t node = 0;
    std::size_t hole = 0;
    while (true) {
      const std::size_t high = 2 * node + 1;
      if (high < n && less_(slots_[high], moving)) std::swap(moving, slots_[high]);
      std::size_t child_low = n;
      for (std::size_t c = 2 * node + 1; c <= 2 * node + 2; ++c) {
        const std::size_t low = 2 * c;
        if (low < n && (child_low == n || less_(slots_[low], slots_[child_low]))) {
          child_low = low;
        }
      }
      if (child_low == n || !less_(slots_[child_low], moving)) break;
      slots_[hole] = std::move(slots_[child_low]);
      hole = child_low;
      node = child_low / 2;
    }
    slots_[hole] = std::move(moving);
    return result;
  }

  T pop_max() {
    assert(!empty());
    if (slots_.size() <= 2) {
      T result = std::move(slots_.back());
      slots_.pop_back();
      return result;
    }
    T result = std::move(slots_[1]);
    T moving = std::move(slots_.back());
    slots_.pop_back();
    const std::size_t n = slots_.size();

    std::size_t node = 0;
    std::size_t hole = 1;
    while (true) {
      const std::size_t low = 2 * node;
      if (hole != low && less_(moving, slots_[low])) std::swap(moving, slots_[low]);
      std::size_t child_high = n;
      for (std::size_t c = 2 * node + 1; c <= 2 * node + 2; ++c) {
        if (2 * c >= n) continue;
        const std::size_t high = 2 * c + 1 < n ? 2 * c + 1 : 2 * c;
        if (child_high == n || less_(slots_[child_high], slots_[high])) {
          child_high = high;
        }
      }
      if (child_high == n || !less_(moving, slots_[child_high])) break;
      slots_[hole] = std::move(slots_[child_high]);
      hole = child_high;
      node = child_high / 2;
    }
    slots_[hole] = std::move(moving);
    return result;
  }

  // Checks the interval-heap invariants; for tests.
  bool valid() const {
    const std::size_t n = slots_.size();
    for (std::size_t node = 0; 2 * node < n; ++node) {
      const std::size_t low = 2 * node;
      const std::size_t high = low + 1 < n ? low + 1 : low;
      if (less_(slots_[high], slots_[low])) return false;
      if (node == 0) continue;
      const std::size_t parent = (node - 1) / 2;
      if (less_(slots_[low], slots_[2 * parent])) return false;
      if (less_(slots_[2 * parent + 1], slots_[high])) return false;
    }
    return true;
  }

 private:
  void sift_up_low(std::size_t idx) {
    for (std::size_t node = idx / 2; node > 0; node = idx / 2) {
      const std::size_t target = 2 * ((node - 1) / 2);
      if (!less_(slots_[idx], slots_[target])) break;
      std::swap(slots_[idx], slots_[target]);
      idx = target;
    }
  }

  void sift_up_high(std::size_t idx) {
    for (std::size_t node = idx / 2; node > 0; node = idx / 2) {
      const std::size_t target = 2 * ((node - 1) / 2) + 1;
      if (!less_(slots_[target], slots_[idx])) break;
      std::swap(slots_[idx], slots_[target]);
      idx = target;
    }
  }

  std::vector<T> slots_;
  Less less_;
};

}  // namespace opmpc
