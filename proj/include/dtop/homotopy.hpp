#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dtop/budget.hpp"
#include "dtop/map.hpp"

namespace dtop {

// Stages F_0..F_m of a digital homotopy over a shared domain and codomain.
struct HomotopyWitness {
  std::vector<DigitalMap> stages;

  std::size_t length() const { return stages.empty() ? 0 : stages.size() - 1; }
  const DigitalMap& front() const { return stages.front(); }
  const DigitalMap& back() const { return stages.back(); }
};

struct HomotopyCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

namespace detail {

inline bool same_points(const ImagePtr& a, const ImagePtr& b) { return a == b || a->points() == b->points(); }

}  // namespace detail

// Checks the endpoint condition, continuity of every stage, and that every
// time track moves to an equal or adjacent point at each step.
inline HomotopyCheck verify_homotopy(const HomotopyWitness& w, const DigitalMap& f, const DigitalMap& g) {
  if (!detail::same_points(f.domain(), g.domain()) || !detail::same_points(f.codomain(), g.codomain()))
    throw Error("verify_homotopy: endpoint maps have different domains or codomains");
  if (w.stages.empty()) return {false, "witness has no stages"};
  for (const auto& s : w.stages)
    if (!detail::same_points(s.domain(), f.domain()) || !detail::same_points(s.codomain(), f.codomain()))
      throw Error("verify_homotopy: stage domain or codomain mismatch");
  if (!(w.front() == f)) return {false, "stage 0 differs from the initial map"};
  if (!(w.back() == g)) return {false, "last stage differs from the final map"};
  const auto& cod = *f.codomain();
  for (std::size_t s = 0; s < w.stages.size(); ++s) {
    auto c = is_continuous(w.stages[s]);
    if (!c) {
      auto [i, j] = *c.violation;
      return {false, "stage " + std::to_string(s) + " is not continuous on edge " +
                         f.domain()->point(i).str() + "-" + f.domain()->point(j).str()};
    }
    if (s == 0) continue;
    for (Index y = 0; y < f.domain()->size(); ++y)
      if (!cod.adjacent_or_equal(w.stages[s - 1](y), w.stages[s](y)))
        return {false, "time track of " + f.domain()->point(y).str() + " jumps between stages " +
                           std::to_string(s - 1) + " and " + std::to_string(s)};
  }
  return {};
}

inline HomotopyWitness reversed(const HomotopyWitness& w) {
  HomotopyWitness r{std::vector<DigitalMap>(w.stages.rbegin(), w.stages.rend())};
  return r;
}

// a followed by b; a's last stage must equal b's first.
inline HomotopyWitness concatenated(const HomotopyWitness& a, const HomotopyWitness& b) {
  if (!(a.back() == b.front())) throw Error("concatenated: witnesses do not meet");
  HomotopyWitness r = a;
  r.stages.insert(r.stages.end(), b.stages.begin() + 1, b.stages.end());
  return r;
}

// Restricts every stage to the points of `sub` (a subimage of the domain).
inline HomotopyWitness restricted(const HomotopyWitness& w, const ImagePtr& sub) {
  HomotopyWitness r;
  const auto& dom = w.front().domain();
  std::vector<Index> idx;
  for (const auto& p : sub->points()) idx.push_back(dom->index_of(p));
  for (const auto& s : w.stages) {
    std::vector<Index> a;
    for (Index i : idx) a.push_back(s(i));
    r.stages.emplace_back(sub, s.codomain(), std::move(a));
  }
  return r;
}

// Appends stalling stages until the witness has the requested length.
inline HomotopyWitness padded(HomotopyWitness w, std::size_t length) {
  while (w.length() < length) w.stages.push_back(w.back());
  return w;
}

// Enumerates the continuous maps g with g(x) equal or adjacent to f(x) for
// every x, i.e. the neighbors of f in the graph of continuous maps. Values are
// tried in ascending order so maps come out lexicographically. `visit` returns
// false to stop early.
inline void for_each_homotopy_step(const DigitalImage& dom, const DigitalImage& cod, const std::vector<Index>& f,
                                   SearchBudget& budget,
                                   const std::function<bool(const std::vector<Index>&)>& visit) {
  const std::size_t n = dom.size();
  if (n == 0) {
    visit(f);
    return;
  }
  std::vector<std::vector<Index>> options(n);
  for (Index x = 0; x < n; ++x) {
    auto& o = options[x];
    o = cod.neighbors(f[x]);
    o.push_back(f[x]);
    std::sort(o.begin(), o.end());
  }
  std::vector<Index> g(n);
  std::vector<std::size_t> pos(n, 0);
  std::size_t x = 0;
  bool stop = false;
  // Iterative backtracking over domain points in index order.
  while (!stop) {
    if (pos[x] == options[x].size()) {
      if (x == 0) break;
      pos[x] = 0;
      --x;
      ++pos[x];
      continue;
    }
    budget.charge();
    Index v = options[x][pos[x]];
    bool ok = true;
    for (Index y : dom.neighbors(x)) {
      if (y >= x) break;
      if (!cod.adjacent_or_equal(v, g[y])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++pos[x];
      continue;
    }
    g[x] = v;
    if (x + 1 == n) {
      if (!visit(g)) stop = true;
      ++pos[x];
    } else {
      ++x;
    }
  }
}

struct MapSearchResult {
  bool found = false;
  std::vector<std::vector<Index>> path;  // start .. target, empty if not found
  std::size_t explored = 0;
};

// Breadth-first search in the graph whose vertices are continuous maps
// dom -> cod and whose edges join pointwise equal-or-adjacent maps. Optional
// `admit` restricts the vertex set further and `max_depth` the path length.
// Returns a shortest path to the first target discovered.
inline MapSearchResult search_map_graph(const DigitalImage& dom, const DigitalImage& cod,
                                        const std::vector<Index>& start,
                                        const std::function<bool(const std::vector<Index>&)>& is_target,
                                        SearchBudget& budget,
                                        const std::function<bool(const std::vector<Index>&)>& admit = {},
                                        std::size_t max_depth = std::numeric_limits<std::size_t>::max()) {
  MapSearchResult res;
  std::vector<std::vector<Index>> nodes{start};
  std::vector<std::size_t> parent{0};
  std::vector<std::size_t> depth{0};
  std::unordered_map<std::vector<Index>, std::size_t, IndexVectorHash> seen{{start, 0}};
  auto build = [&](std::size_t id) {
    std::vector<std::vector<Index>> path;
    for (;;) {
      path.push_back(nodes[id]);
      if (id == 0) break;
      id = parent[id];
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  if (is_target(start)) {
    res.found = true;
    res.path = {start};
    res.explored = 1;
    return res;
  }
  std::optional<std::size_t> hit;
  for (std::size_t head = 0; head < nodes.size() && !hit; ++head) {
    if (depth[head] >= max_depth) break;
    budget.charge();
    std::vector<Index> current = nodes[head];
    for_each_homotopy_step(dom, cod, current, budget, [&](const std::vector<Index>& g) {
      if (seen.count(g)) return true;
      if (admit && !admit(g)) return true;
      std::size_t id = nodes.size();
      seen.emplace(g, id);
      nodes.push_back(g);
      parent.push_back(head);
      depth.push_back(depth[head] + 1);
      if (is_target(g)) {
        hit = id;
        return false;
      }
      return true;
    });
  }
  res.explored = nodes.size();
  if (hit) {
    res.found = true;
    res.path = build(*hit);
  }
  return res;
}

// All continuous maps reachable from `start` (the homotopy class of start).
inline std::unordered_set<std::vector<Index>, IndexVectorHash> homotopy_class(const DigitalImage& dom,
                                                                              const DigitalImage& cod,
                                                                              const std::vector<Index>& start,
                                                                              SearchBudget& budget) {
  std::unordered_set<std::vector<Index>, IndexVectorHash> seen{start};
  std::vector<std::vector<Index>> queue{start};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    budget.charge();
    std::vector<Index> current = queue[head];
    for_each_homotopy_step(dom, cod, current, budget, [&](const std::vector<Index>& g) {
      if (seen.insert(g).second) queue.push_back(g);
      return true;
    });
  }
  return seen;
}

namespace detail {

inline HomotopyWitness to_witness(const ImagePtr& dom, const ImagePtr& cod,
                                  const std::vector<std::vector<Index>>& path) {
  HomotopyWitness w;
  for (const auto& a : path) w.stages.emplace_back(dom, cod, a);
  return w;
}

inline void require_continuous(const DigitalMap& f, const char* what) {
  if (!is_continuous(f)) throw Error(std::string(what) + ": input map is not continuous");
}

}  // namespace detail

struct HomotopyResult {
  bool homotopic = false;
  std::optional<HomotopyWitness> witness;
  explicit operator bool() const { return homotopic; }
};

// Complete: the vertex set is finite, so exhausting the search proves the
// maps are not homotopic. The returned witness is a shortest one.
inline HomotopyResult are_homotopic(const DigitalMap& f, const DigitalMap& g,
                                    SearchBudget budget = SearchBudget()) {
  if (!detail::same_points(f.domain(), g.domain()) || !detail::same_points(f.codomain(), g.codomain()))
    throw Error("are_homotopic: maps have different domains or codomains");
  detail::require_continuous(f, "are_homotopic");
  detail::require_continuous(g, "are_homotopic");
  const auto& target = g.assignment();
  auto r = search_map_graph(*f.domain(), *f.codomain(), f.assignment(),
                            [&](const std::vector<Index>& m) { return m == target; }, budget);
  HomotopyResult out;
  out.homotopic = r.found;
  if (r.found) out.witness = detail::to_witness(f.domain(), f.codomain(), r.path);
  return out;
}

struct NullhomotopyResult {
  bool nullhomotopic = false;
  std::optional<HomotopyWitness> witness;  // ends at a constant map
  std::optional<Index> constant;           // codomain index of that constant
  explicit operator bool() const { return nullhomotopic; }
};

// A single sweep tests every constant map at once.
inline NullhomotopyResult is_nullhomotopic(const DigitalMap& f, SearchBudget budget = SearchBudget()) {
  detail::require_continuous(f, "is_nullhomotopic");
  NullhomotopyResult out;
  const auto& dom = *f.domain();
  if (dom.empty()) throw Error("is_nullhomotopic: empty domain");
  // Each point's track stays in its codomain component, so images spanning
  // two components can never meet.
  auto comp = components(*f.codomain());
  for (Index v : f.assignment())
    if (comp[v] != comp[f(0)]) return out;
  auto constant = [](const std::vector<Index>& m) {
    return std::all_of(m.begin(), m.end(), [&](Index v) { return v == m.front(); });
  };
  auto r = search_map_graph(dom, *f.codomain(), f.assignment(), constant, budget);
  if (r.found) {
    out.nullhomotopic = true;
    out.witness = detail::to_witness(f.domain(), f.codomain(), r.path);
    out.constant = r.path.back().front();
  }
  return out;
}

inline NullhomotopyResult is_contractible(const ImagePtr& img, SearchBudget budget = SearchBudget()) {
  if (img->empty()) throw Error("is_contractible: empty image");
  return is_nullhomotopic(DigitalMap::identity(img), budget);
}

// Moves points one at a time one hop along shortest paths toward `target`,
// keeping every intermediate map continuous. Cheap, incomplete; returns a
// witness when it reaches the constant map.
inline std::optional<HomotopyWitness> greedy_contraction(const DigitalMap& f, Index target,
                                                         std::size_t max_stages = 10000) {
  const auto& cod = *f.codomain();
  const auto& dom = *f.domain();
  auto dist = graph_distances(cod, target);
  std::vector<Index> cur = f.assignment();
  for (Index v : cur)
    if (dist[v] < 0) return std::nullopt;
  HomotopyWitness w{{f}};
  auto continuous_at = [&](const std::vector<Index>& m, Index x) {
    for (Index y : dom.neighbors(x))
      if (!cod.adjacent_or_equal(m[x], m[y])) return false;
    return true;
  };
  while (w.stages.size() < max_stages) {
    if (std::all_of(cur.begin(), cur.end(), [&](Index v) { return v == target; })) return w;
    std::vector<Index> next = cur;
    bool moved = false;
    for (Index x = 0; x < dom.size(); ++x) {
      if (next[x] == target) continue;
      for (Index v : cod.neighbors(next[x])) {
        if (dist[v] != dist[next[x]] - 1) continue;
        Index old = next[x];
        next[x] = v;
        // Continuity of `next` plus track adjacency to `cur`.
        if (continuous_at(next, x) && cod.adjacent_or_equal(cur[x], v)) {
          moved = true;
          break;
        }
        next[x] = old;
      }
    }
    if (!moved) return std::nullopt;
    w.stages.emplace_back(f.domain(), f.codomain(), next);
    cur = std::move(next);
  }
  return std::nullopt;
}

enum class Tristate { no, yes, inconclusive };

inline const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "true";
    case Tristate::no: return "false";
    default: return "inconclusive";
  }
}

// Every continuous map dom -> cod, lexicographic. Throws BudgetExceeded past `limit`.
inline std::vector<std::vector<Index>> enumerate_continuous_maps(const DigitalImage& dom, const DigitalImage& cod,
                                                                 std::size_t limit) {
  std::vector<std::vector<Index>> out;
  const std::size_t n = dom.size();
  if (n == 0) return {{}};
  if (cod.empty()) return out;
  std::vector<Index> g(n);
  std::function<void(Index)> rec = [&](Index x) {
    if (x == n) {
      out.push_back(g);
      if (out.size() > limit) throw BudgetExceeded("too many continuous maps to enumerate");
      return;
    }
    for (Index v = 0; v < cod.size(); ++v) {
      bool ok = true;
      for (Index y : dom.neighbors(x)) {
        if (y >= x) break;
        if (!cod.adjacent_or_equal(v, g[y])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      g[x] = v;
      rec(x + 1);
    }
  };
  rec(0);
  return out;
}

struct EquivalenceResult {
  Tristate verdict = Tristate::inconclusive;
  std::optional<DigitalMap> forward;   // f: x -> y
  std::optional<DigitalMap> backward;  // g: y -> x
};

// Searches all pairs of continuous maps f: x -> y, g: y -> x for
// g.f ~ id_x and f.g ~ id_y. More than `pair_limit` candidate pairs is
// reported as inconclusive rather than false.
inline EquivalenceResult are_homotopy_equivalent(const ImagePtr& x, const ImagePtr& y,
                                                 std::size_t pair_limit = 1000000) {
  EquivalenceResult res;
  if (x->points() == y->points() && x->edges() == y->edges()) {
    res.verdict = Tristate::yes;
    res.forward = DigitalMap::identity(x);
    res.backward = DigitalMap::identity(y);
    return res;
  }
  try {
    auto fs = enumerate_continuous_maps(*x, *y, pair_limit);
    auto gs = enumerate_continuous_maps(*y, *x, pair_limit);
    if (fs.size() * gs.size() > pair_limit) return res;
    SearchBudget unlimited;
    auto id_x = DigitalMap::identity(x).assignment();
    auto id_y = DigitalMap::identity(y).assignment();
    auto class_x = homotopy_class(*x, *x, id_x, unlimited);
    auto class_y = homotopy_class(*y, *y, id_y, unlimited);
    for (const auto& f : fs)
      for (const auto& g : gs) {
        std::vector<Index> gf(x->size()), fg(y->size());
        for (Index i = 0; i < gf.size(); ++i) gf[i] = g[f[i]];
        for (Index i = 0; i < fg.size(); ++i) fg[i] = f[g[i]];
        if (class_x.count(gf) && class_y.count(fg)) {
          res.verdict = Tristate::yes;
          res.forward = DigitalMap(x, y, f);
          res.backward = DigitalMap(y, x, g);
          return res;
        }
      }
    res.verdict = Tristate::no;
  } catch (const BudgetExceeded&) {
    res.verdict = Tristate::inconclusive;
  }
  return res;
}

}  // namespace dtop
