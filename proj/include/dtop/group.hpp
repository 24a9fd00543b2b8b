#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dtop/image.hpp"
#include "dtop/map.hpp"

namespace dtop {

// A group operation given extensionally over the points of a carrier image.
// Window tables model a finite window of an infinite group: products that
// leave the window are undefined and closure is not required.
class CayleyTable {
 public:
  static constexpr std::int32_t undefined = -1;

  CayleyTable(ImagePtr carrier, std::vector<std::int32_t> products, Index identity, bool window = false)
      : carrier_(std::move(carrier)), products_(std::move(products)), identity_(identity), window_(window) {
    const std::size_t n = carrier_->size();
    if (products_.size() != n * n) throw Error("Cayley table must have |carrier|^2 entries");
    if (identity_ >= n) throw Error("Cayley table identity out of range");
    for (auto v : products_)
      if (v != undefined && (v < 0 || static_cast<std::size_t>(v) >= n)) throw Error("Cayley table entry out of range");
  }

  // `op` returns nullopt (or a point outside the carrier, for windows) when
  // the product is undefined.
  static CayleyTable from_operation(const ImagePtr& carrier, const Point& identity,
                                    const std::function<std::optional<Point>(const Point&, const Point&)>& op,
                                    bool window = false) {
    const std::size_t n = carrier->size();
    std::vector<std::int32_t> t(n * n, undefined);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        auto c = op(carrier->point(a), carrier->point(b));
        if (!c) continue;
        auto idx = carrier->find(*c);
        if (idx) {
          t[a * n + b] = static_cast<std::int32_t>(*idx);
        } else if (!window) {
          throw Error("operation leaves the carrier at " + carrier->point(a).str() + "*" + carrier->point(b).str());
        }
      }
    return CayleyTable(carrier, std::move(t), carrier->index_of(identity), window);
  }

  const ImagePtr& carrier() const { return carrier_; }
  std::size_t order() const { return carrier_->size(); }
  Index identity() const { return identity_; }
  bool window() const { return window_; }
  const std::vector<std::int32_t>& products() const { return products_; }

  std::optional<Index> multiply(Index a, Index b) const {
    auto v = products_[a * order() + b];
    if (v == undefined) return std::nullopt;
    return static_cast<Index>(v);
  }
  std::optional<Index> inverse(Index a) const {
    for (Index b = 0; b < order(); ++b)
      if (multiply(a, b) == identity_ && multiply(b, a) == identity_) return b;
    return std::nullopt;
  }

 private:
  ImagePtr carrier_;
  std::vector<std::int32_t> products_;
  Index identity_;
  bool window_;
};

struct CayleyReport {
  bool closure = true;
  bool associativity = true;
  bool identity = true;
  bool inverses = true;
  bool window = false;  // closure waived
  std::vector<std::string> failures;
  bool ok() const { return closure && associativity && identity && inverses; }
};

// Exhaustive axiom check. On windows, associativity is checked wherever all
// four products are defined and closure is waived.
inline CayleyReport verify_cayley(const CayleyTable& t) {
  CayleyReport r;
  r.window = t.window();
  const auto& c = *t.carrier();
  const Index n = static_cast<Index>(t.order());
  for (Index a = 0; a < n && r.closure; ++a)
    for (Index b = 0; b < n; ++b)
      if (!t.multiply(a, b)) {
        if (!t.window()) {
          r.closure = false;
          r.failures.push_back("closure: " + c.point(a).str() + "*" + c.point(b).str() + " undefined");
        }
        break;
      }
  for (Index a = 0; a < n && r.associativity; ++a)
    for (Index b = 0; b < n && r.associativity; ++b) {
      auto ab = t.multiply(a, b);
      if (!ab) continue;
      for (Index x = 0; x < n; ++x) {
        auto bx = t.multiply(b, x);
        if (!bx) continue;
        auto lhs = t.multiply(*ab, x);
        auto rhs = t.multiply(a, *bx);
        if (lhs && rhs && *lhs != *rhs) {
          r.associativity = false;
          r.failures.push_back("associativity: (" + c.point(a).str() + c.point(b).str() + ")" + c.point(x).str());
          break;
        }
      }
    }
  const Index e = t.identity();
  for (Index a = 0; a < n; ++a)
    if (t.multiply(e, a) != a || t.multiply(a, e) != a) {
      r.identity = false;
      r.failures.push_back("identity: " + c.point(e).str() + " is not neutral for " + c.point(a).str());
      break;
    }
  for (Index a = 0; a < n; ++a)
    if (!t.inverse(a)) {
      r.inverses = false;
      r.failures.push_back("inverse: " + c.point(a).str() + " has no inverse");
      break;
    }
  return r;
}

// Multiplication as a map on the pairs whose product is defined (all pairs
// for closed tables), with the given product adjacency on its domain.
inline DigitalMap multiplication_map(const CayleyTable& t, ProductMode mode) {
  auto sq = product_image(t.carrier(), t.carrier(), mode);
  const Index n = static_cast<Index>(t.order());
  std::vector<Index> defined;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (t.multiply(a, b)) defined.push_back(a * n + b);
  ImagePtr dom = defined.size() == sq->size() ? sq : induced_subimage(sq, defined);
  std::vector<Index> values;
  values.reserve(dom->size());
  for (const auto& p : dom->points()) {
    Index i = sq->index_of(p);
    values.push_back(*t.multiply(i / n, i % n));
  }
  return DigitalMap(dom, t.carrier(), std::move(values));
}

// Requires every element to have an inverse.
inline DigitalMap inversion_map(const CayleyTable& t) {
  std::vector<Index> values(t.order());
  for (Index a = 0; a < t.order(); ++a) {
    auto inv = t.inverse(a);
    if (!inv) throw Error("inversion_map: element without inverse");
    values[a] = *inv;
  }
  return DigitalMap(t.carrier(), t.carrier(), std::move(values));
}

struct MapFailure {
  Point from_a, from_b;  // adjacent domain points
  Point to_a, to_b;      // their images, neither equal nor adjacent
};

struct TopGroupVerdict {
  CayleyReport axioms;
  bool alpha_continuous = false;
  std::optional<MapFailure> alpha_witness;
  bool beta_continuous = false;
  std::optional<MapFailure> beta_witness;
  ProductMode product_mode = ProductMode::min;
  bool ok() const { return axioms.ok() && alpha_continuous && beta_continuous; }
  explicit operator bool() const { return ok(); }
};

inline std::optional<MapFailure> describe_violation(const DigitalMap& f, const std::optional<Edge>& e) {
  if (!e) return std::nullopt;
  const auto& d = *f.domain();
  const auto& c = *f.codomain();
  return MapFailure{d.point(e->first), d.point(e->second), c.point(f(e->first)), c.point(f(e->second))};
}

// The verdict uses the minimal product adjacency on the domain of the
// multiplication; strong mode exists to exhibit why minimality matters.
inline TopGroupVerdict is_topological_group(const CayleyTable& t, ProductMode mode = ProductMode::min) {
  TopGroupVerdict v;
  v.product_mode = mode;
  v.axioms = verify_cayley(t);
  if (!v.axioms.ok()) return v;
  auto alpha = multiplication_map(t, mode);
  auto ca = is_continuous(alpha);
  v.alpha_continuous = ca.continuous;
  v.alpha_witness = describe_violation(alpha, ca.violation);
  auto beta = inversion_map(t);
  auto cb = is_continuous(beta);
  v.beta_continuous = cb.continuous;
  v.beta_witness = describe_violation(beta, cb.violation);
  return v;
}

// Every group operation on the labeled set {0..n-1}, as row-major tables.
// Rows and columns of the identity are fixed; remaining cells are filled in
// row-major order under Latin-square and partial associativity pruning.
inline std::vector<std::vector<Index>> enumerate_group_structures(int n) {
  if (n < 1) throw Error("enumerate_group_structures: n must be positive");
  if (n > 6) throw BudgetExceeded("enumerate_group_structures: n > 6");
  const Index N = static_cast<Index>(n);
  const Index unset = static_cast<Index>(-1);
  std::vector<std::vector<Index>> out;
  for (Index e = 0; e < N; ++e) {
    std::vector<Index> t(N * N, unset);
    for (Index a = 0; a < N; ++a) {
      t[e * N + a] = a;
      t[a * N + e] = a;
    }
    std::vector<std::pair<Index, Index>> cells;
    for (Index a = 0; a < N; ++a)
      for (Index b = 0; b < N; ++b)
        if (a != e && b != e) cells.emplace_back(a, b);
    auto associative_so_far = [&]() {
      for (Index a = 0; a < N; ++a)
        for (Index b = 0; b < N; ++b) {
          Index ab = t[a * N + b];
          if (ab == unset) continue;
          for (Index c = 0; c < N; ++c) {
            Index bc = t[b * N + c];
            if (bc == unset) continue;
            Index l = t[ab * N + c], r = t[a * N + bc];
            if (l != unset && r != unset && l != r) return false;
          }
        }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == cells.size()) {
        out.push_back(t);
        return;
      }
      auto [a, b] = cells[k];
      for (Index v = 0; v < N; ++v) {
        bool clash = false;
        for (Index x = 0; x < N && !clash; ++x)
          if (t[a * N + x] == v || t[x * N + b] == v) clash = true;
        if (clash) continue;
        t[a * N + b] = v;
        if (associative_so_far()) self(self, k + 1);
        t[a * N + b] = unset;
      }
    };
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline CayleyTable table_from_labels(const ImagePtr& carrier, const std::vector<Index>& labels) {
  const std::size_t n = carrier->size();
  std::vector<std::int32_t> t(labels.begin(), labels.end());
  Index e = 0;
  for (Index a = 0; a < n; ++a) {
    bool neutral = true;
    for (Index b = 0; b < n; ++b)
      if (labels[a * n + b] != b) neutral = false;
    if (neutral) e = a;
  }
  return CayleyTable(carrier, std::move(t), e);
}

struct ScanEntry {
  CayleyTable table;
  TopGroupVerdict verdict;
};

struct ScanReport {
  int length = 0;
  std::vector<ScanEntry> entries;
  std::size_t topological() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(),
                                                  [](const ScanEntry& e) { return e.verdict.ok(); }));
  }
};

// Tries every group structure on the interval [0, p-1] with c1 adjacency.
inline ScanReport interval_group_scan(int p) {
  ScanReport r;
  r.length = p;
  auto carrier = interval_image(0, p - 1);
  for (const auto& labels : enumerate_group_structures(p)) {
    auto t = table_from_labels(carrier, labels);
    auto v = is_topological_group(t);
    r.entries.push_back({std::move(t), std::move(v)});
  }
  return r;
}

struct HomomorphismReport {
  bool homomorphism = true;
  bool continuous = false;
  bool bijective = false;
  bool inverse_continuous = false;
  std::optional<std::pair<Point, Point>> hom_failure;
  std::optional<Edge> continuity_failure;
  bool top_homomorphism() const { return homomorphism && continuous; }
  bool group_isomorphism() const { return homomorphism && bijective; }
  bool top_isomorphism() const { return top_homomorphism() && bijective && inverse_continuous; }
};

// f(x*y) = f(x)o f(y) wherever both sides are defined, plus the continuity
// facts needed for the homomorphism and isomorphism notions.
inline HomomorphismReport check_homomorphism(const DigitalMap& f, const CayleyTable& t1, const CayleyTable& t2) {
  if (f.domain()->points() != t1.carrier()->points() || f.codomain()->points() != t2.carrier()->points())
    throw Error("homomorphism check: map does not run between the carriers");
  HomomorphismReport r;
  const Index n = static_cast<Index>(t1.order());
  for (Index a = 0; a < n && r.homomorphism; ++a)
    for (Index b = 0; b < n; ++b) {
      auto ab = t1.multiply(a, b);
      if (!ab) continue;
      auto rhs = t2.multiply(f(a), f(b));
      if (!rhs) continue;
      if (f(*ab) != *rhs) {
        r.homomorphism = false;
        r.hom_failure = std::make_pair(t1.carrier()->point(a), t1.carrier()->point(b));
        break;
      }
    }
  auto iso = is_digital_isomorphism(f);
  r.continuous = iso.continuous;
  r.continuity_failure = iso.forward_violation;
  r.bijective = iso.bijective;
  r.inverse_continuous = iso.inverse_continuous;
  return r;
}

inline bool is_top_homomorphism(const DigitalMap& f, const CayleyTable& t1, const CayleyTable& t2) {
  return check_homomorphism(f, t1, t2).top_homomorphism();
}

inline bool is_top_isomorphism(const DigitalMap& f, const CayleyTable& t1, const CayleyTable& t2) {
  return check_homomorphism(f, t1, t2).top_isomorphism();
}

// Componentwise operation on the minimal product; the result is re-verified.
inline CayleyTable product_group(const CayleyTable& t1, const CayleyTable& t2) {
  auto carrier = product_image(t1.carrier(), t2.carrier(), ProductMode::min);
  const Index n1 = static_cast<Index>(t1.order()), n2 = static_cast<Index>(t2.order());
  const Index n = n1 * n2;
  std::vector<std::int32_t> t(std::size_t(n) * n, CayleyTable::undefined);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      auto l = t1.multiply(a / n2, b / n2);
      auto r = t2.multiply(a % n2, b % n2);
      if (l && r) t[std::size_t(a) * n + b] = static_cast<std::int32_t>(*l * n2 + *r);
    }
  CayleyTable out(carrier, std::move(t), t1.identity() * n2 + t2.identity(), t1.window() || t2.window());
  if (is_topological_group(t1) && is_topological_group(t2) && !is_topological_group(out))
    throw ConstructionFailure("product of topological groups failed verification");
  return out;
}

class NotASubgroup : public Error {
 public:
  using Error::Error;
};

inline std::optional<std::string> subgroup_defect(const CayleyTable& t, const std::vector<Index>& members) {
  std::vector<char> in(t.order(), 0);
  for (Index m : members) in[m] = 1;
  if (!in[t.identity()]) return "identity missing";
  for (Index a : members) {
    auto inv = t.inverse(a);
    if (!inv || !in[*inv]) return "not closed under inverses at " + t.carrier()->point(a).str();
    for (Index b : members) {
      auto ab = t.multiply(a, b);
      if (!ab || !in[*ab])
        return "not closed: " + t.carrier()->point(a).str() + "*" + t.carrier()->point(b).str();
    }
  }
  return std::nullopt;
}

inline CayleyTable induced_table(const CayleyTable& t, const std::vector<Index>& members) {
  auto sub = induced_subimage(t.carrier(), members);
  const std::size_t k = sub->size();
  std::vector<Index> to_parent(k);
  for (Index i = 0; i < k; ++i) to_parent[i] = t.carrier()->index_of(sub->point(i));
  std::vector<std::int32_t> products(k * k, CayleyTable::undefined);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b)
      if (auto ab = t.multiply(to_parent[a], to_parent[b]))
        if (auto i = sub->find(t.carrier()->point(*ab))) products[a * k + b] = static_cast<std::int32_t>(*i);
  return CayleyTable(sub, std::move(products), sub->index_of(t.carrier()->point(t.identity())), t.window());
}

// Throws NotASubgroup for subsets that are not subgroups, and
// ConstructionFailure if a subgroup of a topological group fails to verify.
inline TopGroupVerdict subgroup_check(const CayleyTable& t, const std::vector<Index>& members) {
  if (auto defect = subgroup_defect(t, members)) throw NotASubgroup("not a subgroup: " + *defect);
  auto v = is_topological_group(induced_table(t, members));
  if (!v.ok() && is_topological_group(t).ok())
    throw ConstructionFailure("subgroup of a topological group failed verification");
  return v;
}

// All subgroups, as sorted member lists; order at most 20.
inline std::vector<std::vector<Index>> subgroups(const CayleyTable& t) {
  if (t.order() > 20) throw BudgetExceeded("subgroups: order above 20");
  std::vector<std::vector<Index>> out;
  const std::uint32_t n = static_cast<std::uint32_t>(t.order());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask >> t.identity() & 1u)) continue;
    std::vector<Index> members;
    for (Index i = 0; i < n; ++i)
      if (mask >> i & 1u) members.push_back(i);
    if (!subgroup_defect(t, members)) out.push_back(std::move(members));
  }
  return out;
}

// The table carried along a bijection f: t.carrier() -> f.codomain().
inline CayleyTable transport(const CayleyTable& t, const DigitalMap& f) {
  auto inv = inverse(f);
  if (!inv) throw Error("transport: map is not bijective");
  const Index n = static_cast<Index>(t.order());
  std::vector<std::int32_t> products(std::size_t(n) * n, CayleyTable::undefined);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (auto ab = t.multiply((*inv)(a), (*inv)(b))) products[a * n + b] = static_cast<std::int32_t>(f(*ab));
  return CayleyTable(f.codomain(), std::move(products), f(t.identity()), t.window());
}

}  // namespace dtop
