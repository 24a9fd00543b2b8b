#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dtop/image.hpp"

namespace dtop {

// A total function between the point sets of two images, stored as codomain
// indices per domain index.
class DigitalMap {
 public:
  DigitalMap(ImagePtr domain, ImagePtr codomain, std::vector<Index> assignment)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment)) {
    if (assignment_.size() != domain_->size())
      throw Error("map assignment has " + std::to_string(assignment_.size()) + " entries, domain has " +
                  std::to_string(domain_->size()) + " points");
    for (Index v : assignment_)
      if (v >= codomain_->size()) throw Error("map value out of codomain range");
  }

  static DigitalMap from_function(const ImagePtr& domain, const ImagePtr& codomain,
                                  const std::function<Point(const Point&)>& fn) {
    std::vector<Index> a;
    a.reserve(domain->size());
    for (const auto& p : domain->points()) a.push_back(codomain->index_of(fn(p)));
    return DigitalMap(domain, codomain, std::move(a));
  }
  static DigitalMap identity(const ImagePtr& img) {
    std::vector<Index> a(img->size());
    for (Index i = 0; i < a.size(); ++i) a[i] = i;
    return DigitalMap(img, img, std::move(a));
  }
  static DigitalMap constant(const ImagePtr& domain, const ImagePtr& codomain, Index value) {
    return DigitalMap(domain, codomain, std::vector<Index>(domain->size(), value));
  }
  // Inclusion of `sub` into `super`; every point of sub must lie in super.
  static DigitalMap inclusion(const ImagePtr& sub, const ImagePtr& super) {
    return from_function(sub, super, [](const Point& p) { return p; });
  }

  const ImagePtr& domain() const { return domain_; }
  const ImagePtr& codomain() const { return codomain_; }
  const std::vector<Index>& assignment() const { return assignment_; }
  Index operator()(Index i) const { return assignment_[i]; }
  const Point& apply(const Point& p) const { return codomain_->point(assignment_[domain_->index_of(p)]); }

  bool is_constant() const {
    for (Index v : assignment_)
      if (v != assignment_.front()) return false;
    return true;
  }

  // Equality compares assignments only; callers are responsible for shared images.
  bool operator==(const DigitalMap& o) const { return assignment_ == o.assignment_; }

 private:
  ImagePtr domain_;
  ImagePtr codomain_;
  std::vector<Index> assignment_;
};

struct ContinuityResult {
  bool continuous = true;
  std::optional<Edge> violation;  // a domain edge whose images are neither equal nor adjacent
  explicit operator bool() const { return continuous; }
};

// Edge characterization: every adjacent pair maps to equal or adjacent points.
inline ContinuityResult is_continuous(const DigitalMap& f) {
  const auto& dom = *f.domain();
  const auto& cod = *f.codomain();
  for (Index i = 0; i < dom.size(); ++i)
    for (Index j : dom.neighbors(i))
      if (i < j && !cod.adjacent_or_equal(f(i), f(j))) return {false, Edge{i, j}};
  return {};
}

inline std::vector<Edge> continuity_violations(const DigitalMap& f) {
  std::vector<Edge> out;
  const auto& dom = *f.domain();
  const auto& cod = *f.codomain();
  for (Index i = 0; i < dom.size(); ++i)
    for (Index j : dom.neighbors(i))
      if (i < j && !cod.adjacent_or_equal(f(i), f(j))) out.emplace_back(i, j);
  return out;
}

namespace detail {

// Is the vertex set `mask` (bit i = vertex i) connected in `img`?
inline bool mask_connected(const DigitalImage& img, const std::vector<char>& in) {
  Index start = 0;
  std::size_t count = 0;
  bool found = false;
  for (Index i = 0; i < in.size(); ++i)
    if (in[i]) {
      ++count;
      if (!found) start = i, found = true;
    }
  if (count <= 1) return true;
  std::vector<char> seen(in.size(), 0);
  std::vector<Index> stack{start};
  seen[start] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Index u = stack.back();
    stack.pop_back();
    for (Index v : img.neighbors(u))
      if (in[v] && !seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == count;
}

}  // namespace detail

// Subset definition: f(A) is connected for every connected A. Exponential;
// domains above 12 points are rejected.
inline bool is_continuous_oracle(const DigitalMap& f) {
  const auto& dom = *f.domain();
  const auto& cod = *f.codomain();
  if (dom.size() > 12) throw BudgetExceeded("is_continuous_oracle: domain larger than 12 points");
  const std::uint32_t n = static_cast<std::uint32_t>(dom.size());
  std::vector<char> in(n), image(cod.size());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    for (std::uint32_t i = 0; i < n; ++i) in[i] = (mask >> i) & 1u;
    if (!detail::mask_connected(dom, in)) continue;
    std::fill(image.begin(), image.end(), 0);
    for (std::uint32_t i = 0; i < n; ++i)
      if (in[i]) image[f(i)] = 1;
    if (!detail::mask_connected(cod, image)) return false;
  }
  return true;
}

// g after f.
inline DigitalMap compose(const DigitalMap& g, const DigitalMap& f) {
  if (f.codomain()->points() != g.domain()->points()) throw Error("compose: maps are not composable");
  std::vector<Index> a(f.domain()->size());
  for (Index i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return DigitalMap(f.domain(), g.codomain(), std::move(a));
}

inline std::optional<DigitalMap> inverse(const DigitalMap& f) {
  if (f.domain()->size() != f.codomain()->size()) return std::nullopt;
  std::vector<Index> inv(f.codomain()->size(), static_cast<Index>(-1));
  for (Index i = 0; i < f.domain()->size(); ++i) {
    if (inv[f(i)] != static_cast<Index>(-1)) return std::nullopt;
    inv[f(i)] = i;
  }
  return DigitalMap(f.codomain(), f.domain(), std::move(inv));
}

struct IsomorphismResult {
  bool bijective = false;
  bool continuous = false;
  bool inverse_continuous = false;
  std::optional<Edge> forward_violation;  // domain edge
  std::optional<Edge> inverse_violation;  // codomain edge
  bool ok() const { return bijective && continuous && inverse_continuous; }
  explicit operator bool() const { return ok(); }
};

inline IsomorphismResult is_digital_isomorphism(const DigitalMap& f) {
  IsomorphismResult r;
  auto fwd = is_continuous(f);
  r.continuous = fwd.continuous;
  r.forward_violation = fwd.violation;
  auto inv = inverse(f);
  r.bijective = inv.has_value();
  if (inv) {
    auto back = is_continuous(*inv);
    r.inverse_continuous = back.continuous;
    r.inverse_violation = back.violation;
  }
  return r;
}

// A digital path is a continuous map out of [0, m].
inline DigitalMap make_path(const ImagePtr& codomain, std::vector<Index> steps) {
  if (steps.empty()) throw Error("make_path: a path needs at least one point");
  auto dom = interval_image(0, static_cast<int>(steps.size()) - 1);
  return DigitalMap(dom, codomain, std::move(steps));
}

}  // namespace dtop
