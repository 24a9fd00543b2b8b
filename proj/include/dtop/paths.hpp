#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dtop/budget.hpp"
#include "dtop/homotopy.hpp"
#include "dtop/image.hpp"

namespace dtop {

// Adjacency on spaces of paths. Pointwise: equal or adjacent at every time.
// Strong: additionally equal or adjacent across neighboring times.
enum class FunctionSpaceMode { pointwise, strong };

inline const char* to_string(FunctionSpaceMode m) { return m == FunctionSpaceMode::pointwise ? "pointwise" : "strong"; }

// All continuous paths of length m starting at `from`, lexicographic.
inline std::vector<std::vector<Index>> lazy_walks(const DigitalImage& img, Index from, int m) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> walk{from};
  auto rec = [&](auto&& self) -> void {
    if (walk.size() == static_cast<std::size_t>(m) + 1) {
      out.push_back(walk);
      return;
    }
    Index cur = walk.back();
    std::vector<Index> next = img.neighbors(cur);
    next.push_back(cur);
    std::sort(next.begin(), next.end());
    for (Index v : next) {
      walk.push_back(v);
      self(self);
      walk.pop_back();
    }
  };
  rec(rec);
  return out;
}

namespace detail {

inline bool path_pair_ok(const DigitalImage& x, const Index* a, const Index* b, int m, FunctionSpaceMode mode) {
  for (int t = 0; t <= m; ++t)
    if (!x.adjacent_or_equal(a[t], b[t])) return false;
  if (mode == FunctionSpaceMode::strong)
    for (int t = 0; t < m; ++t)
      if (!x.adjacent_or_equal(a[t], b[t + 1]) || !x.adjacent_or_equal(a[t + 1], b[t])) return false;
  return true;
}

}  // namespace detail

// The image of all continuous paths [0,m] -> base. A path's point is the
// concatenation of its coordinates; adjacency is explicit.
inline ImagePtr path_space(const ImagePtr& base, int m, FunctionSpaceMode mode,
                           std::size_t limit = 200000) {
  if (m < 0) throw Error("path_space: negative length");
  std::vector<std::vector<Index>> paths;
  for (Index p = 0; p < base->size(); ++p) {
    auto w = lazy_walks(*base, p, m);
    paths.insert(paths.end(), w.begin(), w.end());
    if (paths.size() > limit) throw BudgetExceeded("path_space: more than " + std::to_string(limit) + " paths");
  }
  std::unordered_map<std::vector<Index>, Index, IndexVectorHash> id;
  for (Index i = 0; i < paths.size(); ++i) id.emplace(paths[i], i);
  std::vector<Point> pts;
  pts.reserve(paths.size());
  for (const auto& p : paths) {
    std::vector<int> c;
    for (Index v : p) c.insert(c.end(), base->point(v).coords().begin(), base->point(v).coords().end());
    pts.emplace_back(std::move(c));
  }
  std::vector<Edge> edges;
  auto interval = interval_image(0, m);
  SearchBudget unlimited;
  for (Index i = 0; i < paths.size(); ++i) {
    for_each_homotopy_step(*interval, *base, paths[i], unlimited, [&](const std::vector<Index>& q) {
      Index j = id.at(q);
      if (j > i && detail::path_pair_ok(*base, paths[i].data(), q.data(), m, mode)) edges.emplace_back(i, j);
      return true;
    });
  }
  return DigitalImage::make_explicit(std::move(pts), edges,
                                     "paths(" + base->label() + "," + std::to_string(m) + "," + to_string(mode) + ")");
}

// The endpoint map e_n from the wedge path space X^{J_n} (n arms of common
// length m glued at their start) onto X^n with minimal product adjacency.
// An element stores arm j at time t in slot j*(m+1)+t; all arms share slot t=0.
class EndpointFibration {
 public:
  using Element = std::vector<Index>;

  EndpointFibration(ImagePtr space, int arms, int length, FunctionSpaceMode mode)
      : space_(std::move(space)), arms_(arms), length_(length), mode_(mode) {
    if (arms < 1) throw Error("endpoint fibration: need at least one arm");
    if (length < 0) throw Error("endpoint fibration: negative arm length");
    base_ = power_image(space_, arms_, ProductMode::min);
    const std::size_t n = space_->size();
    dist_.resize(n);
    for (Index p = 0; p < n; ++p) dist_[p] = graph_distances(*space_, p);
  }

  const ImagePtr& base() const { return base_; }
  const ImagePtr& space() const { return space_; }
  int arms() const { return arms_; }
  int length() const { return length_; }
  FunctionSpaceMode mode() const { return mode_; }

  std::vector<Index> decode(Index v) const {
    std::vector<Index> t(arms_);
    const Index n = static_cast<Index>(space_->size());
    for (int j = arms_ - 1; j >= 0; --j) {
      t[j] = v % n;
      v /= n;
    }
    return t;
  }
  Index encode(const std::vector<Index>& t) const {
    Index v = 0;
    for (Index x : t) v = v * static_cast<Index>(space_->size()) + x;
    return v;
  }

  Index at(const Element& e, int arm, int t) const { return e[arm * (length_ + 1) + t]; }

  Index endpoint(const Element& e) const {
    std::vector<Index> t(arms_);
    for (int j = 0; j < arms_; ++j) t[j] = at(e, j, length_);
    return encode(t);
  }

  // Structural validity: shared start and every arm a continuous path.
  bool well_formed(const Element& e) const {
    if (e.size() != static_cast<std::size_t>(arms_) * (length_ + 1)) return false;
    for (Index v : e)
      if (v >= space_->size()) return false;
    for (int j = 0; j < arms_; ++j) {
      if (at(e, j, 0) != at(e, 0, 0)) return false;
      for (int t = 0; t < length_; ++t)
        if (!space_->adjacent_or_equal(at(e, j, t), at(e, j, t + 1))) return false;
    }
    return true;
  }

  bool compatible(const Element& a, const Element& b) const {
    for (int j = 0; j < arms_; ++j)
      if (!detail::path_pair_ok(*space_, a.data() + j * (length_ + 1), b.data() + j * (length_ + 1), length_, mode_))
        return false;
    return true;
  }

  bool fiber_nonempty(Index v) const {
    auto t = decode(v);
    for (Index p = 0; p < space_->size(); ++p) {
      bool ok = true;
      for (Index x : t)
        if (dist_[p][x] < 0 || dist_[p][x] > length_) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  }

  std::vector<Index> uncovered() const {
    std::vector<Index> out;
    for (Index v = 0; v < base_->size(); ++v)
      if (!fiber_nonempty(v)) out.push_back(v);
    return out;
  }
  bool is_surjective() const { return uncovered().empty(); }

  // Every wedge element over v, ordered by start point then arms lexicographically.
  std::vector<Element> fiber(Index v, std::size_t limit = 2'000'000) const {
    auto t = decode(v);
    std::vector<Element> out;
    for (Index p = 0; p < space_->size(); ++p) {
      bool reachable = true;
      for (Index x : t)
        if (dist_[p][x] < 0 || dist_[p][x] > length_) reachable = false;
      if (!reachable) continue;
      std::vector<const std::vector<std::vector<Index>>*> choices;
      for (Index x : t) choices.push_back(&walks(p, x));
      Element e(static_cast<std::size_t>(arms_) * (length_ + 1));
      auto rec = [&](auto&& self, int j) -> void {
        if (j == arms_) {
          out.push_back(e);
          if (out.size() > limit) throw BudgetExceeded("fiber larger than " + std::to_string(limit));
          return;
        }
        for (const auto& w : *choices[j]) {
          std::copy(w.begin(), w.end(), e.begin() + j * (length_ + 1));
          self(self, j + 1);
        }
      };
      rec(rec, 0);
    }
    return out;
  }

  // Every arm stays at x.
  Element constant_element(Index x) const {
    return Element(static_cast<std::size_t>(arms_) * (length_ + 1), x);
  }

 private:
  const std::vector<std::vector<Index>>& walks(Index from, Index to) const {
    auto key = std::make_pair(from, to);
    auto it = walk_cache_.find(key);
    if (it != walk_cache_.end()) return it->second;
    std::vector<std::vector<Index>> ws;
    std::vector<Index> walk{from};
    auto rec = [&](auto&& self) -> void {
      int t = static_cast<int>(walk.size()) - 1;
      Index cur = walk.back();
      if (t == length_) {
        if (cur == to) ws.push_back(walk);
        return;
      }
      std::vector<Index> next = space_->neighbors(cur);
      next.push_back(cur);
      std::sort(next.begin(), next.end());
      for (Index v : next) {
        if (dist_[v][to] < 0 || dist_[v][to] > length_ - t - 1) continue;
        walk.push_back(v);
        self(self);
        walk.pop_back();
      }
    };
    rec(rec);
    return walk_cache_.emplace(key, std::move(ws)).first->second;
  }

  ImagePtr space_;
  ImagePtr base_;
  int arms_;
  int length_;
  FunctionSpaceMode mode_;
  std::vector<std::vector<int>> dist_;
  mutable std::map<std::pair<Index, Index>, std::vector<std::vector<Index>>> walk_cache_;
};

// f x g over the minimal product of the bases; total-space adjacency is the
// minimal product of the factors' equal-or-adjacent relations.
template <class F, class G>
class ProductFibration {
 public:
  using Element = std::pair<typename F::Element, typename G::Element>;

  ProductFibration(std::shared_ptr<const F> f, std::shared_ptr<const G> g)
      : f_(std::move(f)), g_(std::move(g)), base_(product_image(f_->base(), g_->base(), ProductMode::min)) {}

  const ImagePtr& base() const { return base_; }
  const F& left() const { return *f_; }
  const G& right() const { return *g_; }

  Index endpoint(const Element& e) const {
    return f_->endpoint(e.first) * static_cast<Index>(g_->base()->size()) + g_->endpoint(e.second);
  }
  bool well_formed(const Element& e) const { return f_->well_formed(e.first) && g_->well_formed(e.second); }
  bool compatible(const Element& a, const Element& b) const {
    return (a.first == b.first && g_->compatible(a.second, b.second)) ||
           (a.second == b.second && f_->compatible(a.first, b.first));
  }
  bool fiber_nonempty(Index v) const {
    const Index ng = static_cast<Index>(g_->base()->size());
    return f_->fiber_nonempty(v / ng) && g_->fiber_nonempty(v % ng);
  }
  bool is_surjective() const {
    for (Index v = 0; v < base_->size(); ++v)
      if (!fiber_nonempty(v)) return false;
    return true;
  }
  std::vector<Element> fiber(Index v, std::size_t limit = 2'000'000) const {
    const Index ng = static_cast<Index>(g_->base()->size());
    auto a = f_->fiber(v / ng, limit);
    auto b = g_->fiber(v % ng, limit);
    if (a.size() * b.size() > limit) throw BudgetExceeded("product fiber too large");
    std::vector<Element> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
      for (const auto& y : b) out.emplace_back(x, y);
    return out;
  }

 private:
  std::shared_ptr<const F> f_;
  std::shared_ptr<const G> g_;
  ImagePtr base_;
};

// A section over `piece` (sorted base indices): values[i] lies over piece[i].
template <class Element>
struct SectionWitness {
  std::vector<Index> piece;
  std::vector<Element> values;
};

struct SectionCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

// Endpoint identity at every piece point, and continuity from the piece
// (induced adjacency of the base) into the total space.
template <class Fib>
SectionCheck verify_section(const SectionWitness<typename Fib::Element>& w, const Fib& fib) {
  const auto& base = *fib.base();
  if (w.piece.size() != w.values.size()) return {false, "piece and values differ in size"};
  std::unordered_map<Index, std::size_t> pos;
  for (std::size_t i = 0; i < w.piece.size(); ++i) {
    if (w.piece[i] >= base.size()) return {false, "piece point out of range"};
    if (!pos.emplace(w.piece[i], i).second) return {false, "duplicate piece point"};
    if (!fib.well_formed(w.values[i])) return {false, "malformed total-space element over " + base.point(w.piece[i]).str()};
    if (fib.endpoint(w.values[i]) != w.piece[i])
      return {false, "endpoint condition fails at " + base.point(w.piece[i]).str()};
  }
  for (std::size_t i = 0; i < w.piece.size(); ++i)
    for (Index nb : base.neighbors(w.piece[i])) {
      auto it = pos.find(nb);
      if (it == pos.end() || it->second < i) continue;
      if (!fib.compatible(w.values[i], w.values[it->second]))
        return {false, "section not continuous on edge " + base.point(w.piece[i]).str() + "-" + base.point(nb).str()};
    }
  return {};
}

// Decides whether `fib` admits a continuous section over `piece` by
// backtracking: variables are piece points, domains their fibers,
// constraints compatibility across adjacent piece points. Forward checking,
// minimum-remaining-values ordering with ties by degree then index; values in
// fiber order. Exhausting the search certifies that no section exists.
template <class Fib>
std::optional<SectionWitness<typename Fib::Element>> find_section(const Fib& fib, const std::vector<Index>& piece,
                                                                  SearchBudget& budget) {
  using E = typename Fib::Element;
  const auto& base = *fib.base();
  const std::size_t k = piece.size();
  std::vector<std::vector<E>> domain(k);
  for (std::size_t i = 0; i < k; ++i) {
    domain[i] = fib.fiber(piece[i]);
    budget.charge(domain[i].size());
    if (domain[i].empty()) return std::nullopt;
  }
  std::unordered_map<Index, std::size_t> pos;
  for (std::size_t i = 0; i < k; ++i) pos.emplace(piece[i], i);
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 0; i < k; ++i)
    for (Index nb : base.neighbors(piece[i]))
      if (auto it = pos.find(nb); it != pos.end()) adj[i].push_back(it->second);

  std::vector<std::vector<char>> alive(k);
  std::vector<std::size_t> count(k);
  for (std::size_t i = 0; i < k; ++i) {
    alive[i].assign(domain[i].size(), 1);
    count[i] = domain[i].size();
  }
  std::vector<long> chosen(k, -1);
  // Trail of (variable, value) removals for undo.
  std::vector<std::pair<std::size_t, std::size_t>> trail;

  auto select = [&]() -> long {
    long best = -1;
    for (std::size_t i = 0; i < k; ++i) {
      if (chosen[i] >= 0) continue;
      if (best < 0 || count[i] < count[best] ||
          (count[i] == count[best] && adj[i].size() > adj[best].size()))
        best = static_cast<long>(i);
    }
    return best;
  };

  auto rec = [&](auto&& self) -> bool {
    long var = select();
    if (var < 0) return true;
    const std::size_t v = static_cast<std::size_t>(var);
    for (std::size_t a = 0; a < domain[v].size(); ++a) {
      if (!alive[v][a]) continue;
      budget.charge();
      std::size_t mark = trail.size();
      bool wiped = false;
      for (std::size_t u : adj[v]) {
        if (chosen[u] >= 0) continue;
        for (std::size_t b = 0; b < domain[u].size(); ++b) {
          if (!alive[u][b]) continue;
          if (!fib.compatible(domain[v][a], domain[u][b])) {
            alive[u][b] = 0;
            --count[u];
            trail.emplace_back(u, b);
          }
        }
        budget.charge(domain[u].size());
        if (count[u] == 0) {
          wiped = true;
          break;
        }
      }
      if (!wiped) {
        chosen[v] = static_cast<long>(a);
        if (self(self)) return true;
        chosen[v] = -1;
      }
      while (trail.size() > mark) {
        auto [u, b] = trail.back();
        trail.pop_back();
        alive[u][b] = 1;
        ++count[u];
      }
    }
    return false;
  };
  if (!rec(rec)) return std::nullopt;
  SectionWitness<E> w;
  w.piece = piece;
  for (std::size_t i = 0; i < k; ++i) w.values.push_back(domain[i][static_cast<std::size_t>(chosen[i])]);
  return w;
}

}  // namespace dtop
