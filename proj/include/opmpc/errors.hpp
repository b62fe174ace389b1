#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opmpc {

// Malformed input files, generator specs or CLI values.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No itinerary fits the time budget, not even the direct trip s -> d.
class InfeasibleQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedGraph : public std::runtime_error {
 public:
  DisconnectedGraph(std::int64_t from, std::int64_t to)
      : std::runtime_error("nodes " + std::to_string(from) + " and " +
                           std::to_string(to) + " are not connected"),
        from_(from),
        to_(to) {}

  std::int64_t from() const { return from_; }
  std::int64_t to() const { return to_; }

 private:
  std::int64_t from_;
  std::int64_t to_;
};

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace opmpc
