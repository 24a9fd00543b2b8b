#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dtop/error.hpp"
#include "dtop/image.hpp"

namespace dtop {

// Counts elementary search steps (candidate values tried, nodes expanded) and
// throws BudgetExceeded once the limit is passed.
class SearchBudget {
 public:
  static constexpr std::uint64_t unlimited = std::numeric_limits<std::uint64_t>::max();

  explicit SearchBudget(std::uint64_t limit = unlimited) : limit_(limit) {}

  void charge(std::uint64_t steps = 1) {
    used_ += steps;
    if (used_ > limit_) throw BudgetExceeded("search budget of " + std::to_string(limit_) + " steps exhausted");
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

struct IndexVectorHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Index x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace dtop
