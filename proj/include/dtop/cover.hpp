#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtop/budget.hpp"
#include "dtop/image.hpp"

namespace dtop {

enum class Verdict { no, yes, unknown };

template <class Certificate>
struct Admission {
  Verdict verdict = Verdict::unknown;
  std::optional<Certificate> certificate;
};

// An admissibility predicate on nonempty subsets of a base image, with
// certificates. Monotone oracles are downward closed: `restrict` turns a
// certificate for a set into one for any nonempty subset.
template <class O>
concept AdmissibilityOracle = requires(const O& o, const std::vector<Index>& subset,
                                       const typename O::Certificate& c, SearchBudget& budget) {
  typename O::Certificate;
  { o.base() } -> std::convertible_to<ImagePtr>;
  { o.kind() } -> std::convertible_to<std::string>;
  { o.monotone() } -> std::convertible_to<bool>;
  { o.certify(subset, budget) } -> std::same_as<Admission<typename O::Certificate>>;
  { o.verify(subset, c) } -> std::same_as<bool>;
  { o.restrict(c, subset) } -> std::same_as<typename O::Certificate>;
};

template <class Certificate>
struct CoverWitness {
  std::string kind;                     // "cat" or "genus"
  std::vector<std::vector<Index>> pieces;  // sorted index lists into the base
  std::vector<Certificate> certificates;
};

struct Bounds {
  int lower = 1;
  std::optional<int> upper;
  bool exact() const { return upper && *upper == lower; }
  std::string str() const {
    if (exact()) return std::to_string(lower);
    return "[" + std::to_string(lower) + ", " + (upper ? std::to_string(*upper) : std::string("?")) + "]";
  }
};

template <class Certificate>
struct BoundResult {
  Bounds bounds;
  std::optional<CoverWitness<Certificate>> witness;
  std::string note;
  bool exact() const { return bounds.exact(); }
};

struct CoverOptions {
  std::size_t exact_guard = 14;
  std::uint64_t call_budget = 200'000;  // steps per oracle call in bounds mode
};

// Verifies coverage and every certificate.
template <AdmissibilityOracle O>
bool verify_cover(const O& oracle, const CoverWitness<typename O::Certificate>& w) {
  if (w.pieces.size() != w.certificates.size()) return false;
  std::vector<char> covered(oracle.base()->size(), 0);
  for (std::size_t i = 0; i < w.pieces.size(); ++i) {
    if (w.pieces[i].empty()) return false;
    if (!oracle.verify(w.pieces[i], w.certificates[i])) return false;
    for (Index v : w.pieces[i]) {
      if (v >= covered.size()) return false;
      covered[v] = 1;
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

namespace detail {

inline std::vector<Index> mask_members(std::uint32_t mask) {
  std::vector<Index> out;
  for (Index i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

template <class Certificate>
struct AdmissibleFamily {
  std::vector<std::uint32_t> maximal;  // canonical order
  std::vector<Certificate> certificates;
};

// Top-down sweep over all subsets in decreasing size. A set inherits
// admissibility from any admissible one-point extension; only the remaining
// sets reach the oracle, and the admissible ones among them are exactly the
// inclusion-maximal admissible sets.
template <AdmissibilityOracle O>
AdmissibleFamily<typename O::Certificate> admissible_family(const O& oracle, const CoverOptions& opts) {
  const std::size_t n = oracle.base()->size();
  if (n == 0) throw Error("cover: empty base");
  if (n > opts.exact_guard || n > 24)
    throw BudgetExceeded("exact cover: base has " + std::to_string(n) + " points, guard is " +
                         std::to_string(opts.exact_guard));
  if (!oracle.monotone()) throw Error("exact cover requires a monotone oracle");
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  std::vector<signed char> status(std::size_t(full) + 1, -1);
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t m = 1; m <= full; ++m) by_size[std::popcount(m)].push_back(m);
  AdmissibleFamily<typename O::Certificate> fam;
  std::vector<std::pair<std::uint32_t, typename O::Certificate>> found;
  for (std::size_t k = n; k >= 1; --k) {
    for (std::uint32_t m : by_size[k]) {
      bool inherited = false;
      for (std::uint32_t x = 0; x < n && !inherited; ++x)
        if (!(m >> x & 1u) && status[m | (1u << x)] == 1) inherited = true;
      if (inherited) {
        status[m] = 1;
        continue;
      }
      SearchBudget unlimited;
      auto adm = oracle.certify(mask_members(m), unlimited);
      if (adm.verdict == Verdict::unknown) throw BudgetExceeded("exact cover: oracle inconclusive");
      status[m] = adm.verdict == Verdict::yes ? 1 : 0;
      if (adm.verdict == Verdict::yes) found.emplace_back(m, std::move(*adm.certificate));
    }
  }
  for (std::uint32_t x = 0; x < n; ++x)
    if (status[1u << x] != 1)
      throw Error("cover impossible: point " + oracle.base()->point(x).str() + " has no admissible singleton");
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return mask_members(a.first) < mask_members(b.first); });
  for (auto& [m, c] : found) {
    fam.maximal.push_back(m);
    fam.certificates.push_back(std::move(c));
  }
  return fam;
}

}  // namespace detail

template <AdmissibilityOracle O>
std::vector<std::vector<Index>> maximal_admissible_sets(const O& oracle, const CoverOptions& opts = {}) {
  auto fam = detail::admissible_family(oracle, opts);
  std::vector<std::vector<Index>> out;
  for (auto m : fam.maximal) out.push_back(detail::mask_members(m));
  return out;
}

// Exact minimum cover by branch and bound over the maximal admissible sets.
// Branching always picks the lowest uncovered point and tries candidate sets
// in canonical order, so the first optimum found is the canonical answer.
template <AdmissibilityOracle O>
BoundResult<typename O::Certificate> minimal_cover_exact(const O& oracle, const CoverOptions& opts = {}) {
  auto fam = detail::admissible_family(oracle, opts);
  const std::size_t n = oracle.base()->size();
  const std::uint32_t full = (1u << n) - 1u;
  std::size_t largest = 0;
  for (auto m : fam.maximal) largest = std::max<std::size_t>(largest, std::popcount(m));
  std::vector<std::size_t> best, current;
  std::size_t best_size = n + 1;
  auto rec = [&](auto&& self, std::uint32_t covered) -> void {
    if (covered == full) {
      if (current.size() < best_size) {
        best_size = current.size();
        best = current;
      }
      return;
    }
    std::size_t remaining = n - std::popcount(covered);
    std::size_t need = (remaining + largest - 1) / largest;
    if (current.size() + need >= best_size) return;
    Index p = static_cast<Index>(std::countr_zero(~covered & full));
    for (std::size_t i = 0; i < fam.maximal.size(); ++i) {
      if (!(fam.maximal[i] >> p & 1u)) continue;
      current.push_back(i);
      self(self, covered | fam.maximal[i]);
      current.pop_back();
    }
  };
  rec(rec, 0u);
  BoundResult<typename O::Certificate> out;
  CoverWitness<typename O::Certificate> w;
  w.kind = oracle.kind();
  std::sort(best.begin(), best.end());
  for (std::size_t i : best) {
    w.pieces.push_back(detail::mask_members(fam.maximal[i]));
    w.certificates.push_back(fam.certificates[i]);
  }
  out.bounds.lower = static_cast<int>(best_size);
  out.bounds.upper = static_cast<int>(best_size);
  out.witness = std::move(w);
  out.note = "exact";
  return out;
}

template <class Certificate>
struct SeedPiece {
  std::vector<Index> piece;
  Certificate certificate;
};

// Bounds for bases too large for the exact sweep. The lower bound is 2 only
// when the whole base is verified inadmissible. The upper bound comes from
// verified seed pieces plus greedy growth from the lowest uncovered point;
// an oracle call that runs out of budget counts as a rejection, and a point
// whose singleton cannot be certified leaves the upper bound unknown.
template <AdmissibilityOracle O>
BoundResult<typename O::Certificate> minimal_cover_bounds(
    const O& oracle, const CoverOptions& opts = {},
    const std::vector<SeedPiece<typename O::Certificate>>& seeds = {}) {
  using C = typename O::Certificate;
  const auto& base = *oracle.base();
  const std::size_t n = base.size();
  if (n == 0) throw Error("cover: empty base");
  BoundResult<C> out;
  std::vector<Index> all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  {
    SearchBudget budget(opts.call_budget);
    Admission<C> whole;
    try {
      whole = oracle.certify(all, budget);
    } catch (const BudgetExceeded&) {
      whole.verdict = Verdict::unknown;
    }
    if (whole.verdict == Verdict::yes) {
      out.bounds = {1, 1};
      out.witness = CoverWitness<C>{oracle.kind(), {all}, {std::move(*whole.certificate)}};
      out.note = "whole base admissible";
      return out;
    }
    out.bounds.lower = whole.verdict == Verdict::no ? 2 : 1;
  }
  CoverWitness<C> w;
  w.kind = oracle.kind();
  std::vector<char> covered(n, 0);
  for (const auto& s : seeds) {
    if (!oracle.verify(s.piece, s.certificate)) throw Error("cover: seed piece failed verification");
    w.pieces.push_back(s.piece);
    w.certificates.push_back(s.certificate);
    for (Index v : s.piece) covered[v] = 1;
  }
  auto try_certify = [&](const std::vector<Index>& piece) -> Admission<C> {
    SearchBudget budget(opts.call_budget);
    try {
      return oracle.certify(piece, budget);
    } catch (const BudgetExceeded&) {
      return {};
    }
  };
  for (Index start = 0; start < n; ++start) {
    if (covered[start]) continue;
    std::vector<Index> piece{start};
    auto adm = try_certify(piece);
    if (adm.verdict != Verdict::yes) {
      out.note = "no certificate for point " + base.point(start).str();
      return out;
    }
    C cert = std::move(*adm.certificate);
    // Grow along breadth-first order from the start point, uncovered first.
    auto dist = graph_distances(base, start);
    std::vector<Index> order;
    for (Index v = 0; v < n; ++v)
      if (v != start && dist[v] >= 0) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      if (covered[a] != covered[b]) return covered[a] < covered[b];
      return dist[a] < dist[b];
    });
    for (Index v : order) {
      std::vector<Index> grown = piece;
      grown.insert(std::upper_bound(grown.begin(), grown.end(), v), v);
      auto g = try_certify(grown);
      if (g.verdict == Verdict::yes) {
        piece = std::move(grown);
        cert = std::move(*g.certificate);
      }
    }
    for (Index v : piece) covered[v] = 1;
    w.pieces.push_back(std::move(piece));
    w.certificates.push_back(std::move(cert));
  }
  out.bounds.upper = static_cast<int>(w.pieces.size());
  if (*out.bounds.upper < out.bounds.lower) throw Error("cover: oracle answers are inconsistent");
  out.witness = std::move(w);
  out.note = out.bounds.exact() ? "bounds meet" : "greedy upper bound";
  return out;
}

}  // namespace dtop
