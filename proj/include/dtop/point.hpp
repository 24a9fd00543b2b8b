#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace dtop {

// A point of Z^r. Ordering is lexicographic on coordinates.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<int> coords) : coords_(coords) {}
  explicit Point(std::vector<int> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  int operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<int>& coords() const { return coords_; }

  auto operator<=>(const Point&) const = default;
  bool operator==(const Point&) const = default;

  // Concatenation, used for cartesian products.
  friend Point concat(const Point& a, const Point& b) {
    std::vector<int> c(a.coords_);
    c.insert(c.end(), b.coords_.begin(), b.coords_.end());
    return Point(std::move(c));
  }

  Point slice(std::size_t from, std::size_t count) const {
    return Point(std::vector<int>(coords_.begin() + static_cast<std::ptrdiff_t>(from),
                                  coords_.begin() + static_cast<std::ptrdiff_t>(from + count)));
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    os << '(';
    for (std::size_t i = 0; i < p.coords_.size(); ++i) {
      if (i) os << ',';
      os << p.coords_[i];
    }
    return os << ')';
  }

 private:
  std::vector<int> coords_;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int c : p.coords()) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(c));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace dtop
