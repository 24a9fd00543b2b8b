#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtop/cover.hpp"
#include "dtop/group.hpp"
#include "dtop/homotopy.hpp"
#include "dtop/paths.hpp"

namespace dtop {

enum class CoverMode { exact, bounds };

inline const char* to_string(CoverMode m) { return m == CoverMode::exact ? "exact" : "bounds"; }

// Admissible sets for cat: the inclusion of the set into the space is
// nullhomotopic. Certificates are contractions of that inclusion.
class NullhomotopyOracle {
 public:
  using Certificate = HomotopyWitness;

  explicit NullhomotopyOracle(ImagePtr space) : space_(std::move(space)), comp_(components(*space_)) {}

  ImagePtr base() const { return space_; }
  std::string kind() const { return "cat"; }
  bool monotone() const { return true; }

  Admission<Certificate> certify(const std::vector<Index>& subset, SearchBudget& budget) const {
    for (Index v : subset)
      if (comp_[v] != comp_[subset.front()]) return {Verdict::no, std::nullopt};
    auto sub = induced_subimage(space_, subset);
    auto incl = DigitalMap::inclusion(sub, space_);
    if (auto g = greedy_contraction(incl, subset.front())) return {Verdict::yes, std::move(*g)};
    auto constant = [](const std::vector<Index>& m) {
      return std::all_of(m.begin(), m.end(), [&](Index v) { return v == m.front(); });
    };
    auto r = search_map_graph(*sub, *space_, incl.assignment(), constant, budget);
    if (!r.found) return {Verdict::no, std::nullopt};
    return {Verdict::yes, detail::to_witness(sub, space_, r.path)};
  }

  bool verify(const std::vector<Index>& subset, const Certificate& w) const {
    if (w.stages.empty() || subset.empty()) return false;
    auto sub = induced_subimage(space_, subset);
    if (!detail::same_points(w.front().domain(), sub) || !detail::same_points(w.front().codomain(), space_))
      return false;
    if (!w.back().is_constant()) return false;
    return verify_homotopy(w, DigitalMap::inclusion(sub, space_), w.back()).ok;
  }

  Certificate restrict(const Certificate& w, const std::vector<Index>& subset) const {
    return restricted(w, induced_subimage(space_, subset));
  }

 private:
  ImagePtr space_;
  std::vector<int> comp_;
};

// Admissible sets for the genus of a fibration: a continuous section exists.
template <class Fib>
class SectionOracle {
 public:
  using Certificate = SectionWitness<typename Fib::Element>;

  explicit SectionOracle(std::shared_ptr<const Fib> fib) : fib_(std::move(fib)) {}

  ImagePtr base() const { return fib_->base(); }
  std::string kind() const { return "genus"; }
  bool monotone() const { return true; }

  Admission<Certificate> certify(const std::vector<Index>& subset, SearchBudget& budget) const {
    auto w = find_section(*fib_, subset, budget);
    if (!w) return {Verdict::no, std::nullopt};
    return {Verdict::yes, std::move(*w)};
  }
  bool verify(const std::vector<Index>& subset, const Certificate& c) const {
    return c.piece == subset && verify_section(c, *fib_).ok;
  }
  Certificate restrict(const Certificate& c, const std::vector<Index>& subset) const {
    Certificate out;
    out.piece = subset;
    for (Index v : subset) {
      auto it = std::lower_bound(c.piece.begin(), c.piece.end(), v);
      if (it == c.piece.end() || *it != v) throw Error("restrict: point outside the certified piece");
      out.values.push_back(c.values[static_cast<std::size_t>(it - c.piece.begin())]);
    }
    return out;
  }
  const Fib& fibration() const { return *fib_; }

 private:
  std::shared_ptr<const Fib> fib_;
};

using CatResult = BoundResult<HomotopyWitness>;

// Values follow the k-sets convention: a contractible image has cat 1.
inline CatResult cat(const ImagePtr& img, CoverMode mode = CoverMode::exact, const CoverOptions& opts = {}) {
  if (img->empty()) throw Error("cat: empty image");
  NullhomotopyOracle oracle(img);
  if (mode == CoverMode::exact) return minimal_cover_exact(oracle, opts);
  return minimal_cover_bounds(oracle, opts);
}

// Only the whole-image test: lower bound 2 when the identity is certified
// not nullhomotopic, exact 1 when it is.
inline Bounds cat_probe(const ImagePtr& img, std::uint64_t budget) {
  NullhomotopyOracle oracle(img);
  std::vector<Index> all(img->size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  SearchBudget b(budget);
  try {
    auto a = oracle.certify(all, b);
    if (a.verdict == Verdict::yes) return {1, 1};
    if (a.verdict == Verdict::no) return {2, std::nullopt};
  } catch (const BudgetExceeded&) {
  }
  return {1, std::nullopt};
}

template <class Fib>
BoundResult<SectionWitness<typename Fib::Element>> schwarz_genus(
    const std::shared_ptr<const Fib>& fib, CoverMode mode = CoverMode::exact, const CoverOptions& opts = {},
    const std::vector<SeedPiece<SectionWitness<typename Fib::Element>>>& seeds = {}) {
  if (!fib->is_surjective()) throw Error("genus undefined: the fibration is not surjective");
  SectionOracle<Fib> oracle(fib);
  if (mode == CoverMode::exact) return minimal_cover_exact(oracle, opts);
  return minimal_cover_bounds(oracle, opts, seeds);
}

using TcSection = SectionWitness<EndpointFibration::Element>;
using TcCover = CoverWitness<TcSection>;

inline bool verify_tc_cover(const EndpointFibration& fib, const TcCover& w) {
  if (w.pieces.size() != w.certificates.size()) return false;
  std::vector<char> covered(fib.base()->size(), 0);
  for (std::size_t i = 0; i < w.pieces.size(); ++i) {
    if (w.pieces[i].empty() || w.certificates[i].piece != w.pieces[i]) return false;
    if (!verify_section(w.certificates[i], fib)) return false;
    for (Index v : w.pieces[i]) covered[v] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

// Upper bound for the next TC of a connected topological group.
inline Bounds tc_gap_bound(const Bounds& prev, const Bounds& cat_bounds) {
  Bounds b{prev.lower, std::nullopt};
  if (prev.upper && cat_bounds.upper) b.upper = *prev.upper + *cat_bounds.upper;
  return b;
}

inline Bounds genus_product_bound(const Bounds& g1, const Bounds& g2) {
  Bounds b{1, std::nullopt};
  if (g1.upper && g2.upper) b.upper = *g1.upper + *g2.upper;
  return b;
}

// Pieces V_i x W_j with the product sections; |w1|*|w2| pieces, which is
// within the sum bound whenever one factor has a single piece.
template <class F, class G>
CoverWitness<SectionWitness<typename ProductFibration<F, G>::Element>> product_section_cover(
    const ProductFibration<F, G>& fib, const CoverWitness<SectionWitness<typename F::Element>>& w1,
    const CoverWitness<SectionWitness<typename G::Element>>& w2) {
  CoverWitness<SectionWitness<typename ProductFibration<F, G>::Element>> out;
  out.kind = "genus";
  const Index ng = static_cast<Index>(fib.right().base()->size());
  for (const auto& a : w1.certificates)
    for (const auto& b : w2.certificates) {
      SectionWitness<typename ProductFibration<F, G>::Element> s;
      for (std::size_t i = 0; i < a.piece.size(); ++i)
        for (std::size_t j = 0; j < b.piece.size(); ++j) {
          s.piece.push_back(a.piece[i] * ng + b.piece[j]);
          s.values.emplace_back(a.values[i], b.values[j]);
        }
      out.pieces.push_back(s.piece);
      out.certificates.push_back(std::move(s));
    }
  return out;
}

namespace detail {

inline std::vector<Index> tuple_decode(Index v, Index base_size, int len) {
  std::vector<Index> t(static_cast<std::size_t>(len));
  for (int j = len - 1; j >= 0; --j) {
    t[j] = v % base_size;
    v /= base_size;
  }
  return t;
}

inline Index tuple_encode(const std::vector<Index>& t, Index base_size) {
  Index v = 0;
  for (Index x : t) v = v * base_size + x;
  return v;
}

// Contraction of a piece of X^{n-1}: stages[s][i] is the image of the i-th
// member at stage s; the last stage is the identity tuple.
struct Contraction {
  std::vector<Index> members;
  std::vector<std::vector<Index>> stages;
};

// The sections over N_i = {(h, h m) : m in M_i} need, for every pair h ~ h'
// with u = h'^{-1} h, that u F_s(m) and F_s(u m) agree up to adjacency in
// every coordinate. Triples (i, u, k) with members[k] = u members[i].
class TwistCheck {
 public:
  TwistCheck(const CayleyTable& t, const std::vector<Index>& members, int len) : t_(t), len_(len) {
    const auto& x = *t.carrier();
    const Index nx = static_cast<Index>(x.size());
    std::vector<Index> us;
    for (Index h = 0; h < nx; ++h)
      for (Index h2 : x.neighbors(h)) us.push_back(*t.multiply(*t.inverse(h2), h));
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    us_ = us;
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto mi = tuple_decode(members[i], nx, len);
      for (Index u : us) {
        std::vector<Index> um(mi.size());
        for (std::size_t j = 0; j < mi.size(); ++j) um[j] = *t.multiply(u, mi[j]);
        Index code = tuple_encode(um, nx);
        auto it = std::lower_bound(members.begin(), members.end(), code);
        if (it != members.end() && *it == code)
          triples_.push_back({i, u, static_cast<std::size_t>(it - members.begin())});
      }
    }
  }

  bool operator()(const std::vector<Index>& stage) const {
    const auto& x = *t_.carrier();
    const Index nx = static_cast<Index>(x.size());
    for (const auto& tr : triples_) {
      auto a = tuple_decode(stage[tr.i], nx, len_);
      auto b = tuple_decode(stage[tr.k], nx, len_);
      for (int j = 0; j < len_; ++j)
        if (!x.adjacent_or_equal(*t_.multiply(tr.u, a[j]), b[j])) return false;
    }
    return true;
  }

 private:
  struct Triple {
    std::size_t i;
    Index u;
    std::size_t k;
  };
  const CayleyTable& t_;
  int len_;
  std::vector<Index> us_;
  std::vector<Triple> triples_;
};

// Stage-level checks for a contraction certificate of a piece of X^{n-1}.
inline bool contraction_valid(const DigitalImage& pw, const DigitalImage& sub, const Contraction& c, Index e_tuple) {
  if (c.stages.empty() || c.stages.front() != c.members) return false;
  for (Index v : c.stages.back())
    if (v != e_tuple) return false;
  for (std::size_t s = 0; s < c.stages.size(); ++s) {
    const auto& st = c.stages[s];
    if (st.size() != c.members.size()) return false;
    for (Index i = 0; i < sub.size(); ++i)
      for (Index j : sub.neighbors(i))
        if (i < j && !pw.adjacent_or_equal(st[i], st[j])) return false;
    if (s > 0)
      for (std::size_t i = 0; i < st.size(); ++i)
        if (!pw.adjacent_or_equal(c.stages[s - 1][i], st[i])) return false;
  }
  return true;
}

// Pieces of X^{n-1} admitting a twist-compatible contraction to the
// identity tuple within `max_len` steps.
class CompatibleContractionOracle {
 public:
  using Certificate = Contraction;

  CompatibleContractionOracle(const CayleyTable& t, ImagePtr pw, int len, int max_len)
      : t_(t), pw_(std::move(pw)), len_(len), max_len_(max_len) {
    e_tuple_ = tuple_encode(std::vector<Index>(static_cast<std::size_t>(len), t.identity()),
                            static_cast<Index>(t.order()));
  }

  ImagePtr base() const { return pw_; }
  std::string kind() const { return "contraction"; }
  bool monotone() const { return true; }

  Admission<Certificate> certify(const std::vector<Index>& subset, SearchBudget& budget) const {
    auto sub = induced_subimage(pw_, subset);
    TwistCheck twist(t_, subset, len_);
    Index e = e_tuple_;
    auto r = search_map_graph(
        *sub, *pw_, subset, [e](const std::vector<Index>& m) {
          return std::all_of(m.begin(), m.end(), [e](Index v) { return v == e; });
        },
        budget, [&](const std::vector<Index>& m) { return twist(m); }, static_cast<std::size_t>(max_len_));
    if (!r.found) return {Verdict::no, std::nullopt};
    return {Verdict::yes, Contraction{subset, r.path}};
  }

  bool verify(const std::vector<Index>& subset, const Certificate& c) const {
    if (c.members != subset || c.stages.size() > static_cast<std::size_t>(max_len_) + 1) return false;
    auto sub = induced_subimage(pw_, subset);
    if (!contraction_valid(*pw_, *sub, c, e_tuple_)) return false;
    TwistCheck twist(t_, subset, len_);
    return std::all_of(c.stages.begin(), c.stages.end(), [&](const std::vector<Index>& s) { return twist(s); });
  }

  Certificate restrict(const Certificate& c, const std::vector<Index>& subset) const {
    Contraction out{subset, {}};
    std::vector<std::size_t> cols;
    for (Index v : subset)
      cols.push_back(static_cast<std::size_t>(std::lower_bound(c.members.begin(), c.members.end(), v) -
                                              c.members.begin()));
    for (const auto& st : c.stages) {
      std::vector<Index> row;
      for (auto k : cols) row.push_back(st[k]);
      out.stages.push_back(std::move(row));
    }
    return out;
  }

 private:
  const CayleyTable& t_;
  ImagePtr pw_;
  int len_;
  int max_len_;
  Index e_tuple_ = 0;
};

// Sections over N_i built from the contractions: arm 0 stays at h, arm j
// follows h * (contraction track of m, run backwards), stalled at the start
// to the common arm length.
inline TcCover sections_from_contractions(const EndpointFibration& fib, const CayleyTable& t,
                                          const std::vector<Contraction>& pieces) {
  TcCover out;
  out.kind = "genus";
  const Index nx = static_cast<Index>(t.order());
  const int n = fib.arms();
  const int m = fib.length();
  for (const auto& c : pieces) {
    const int T = static_cast<int>(c.stages.size()) - 1;
    if (T > m) throw Error("contraction longer than the arm length");
    std::vector<std::pair<Index, EndpointFibration::Element>> entries;
    for (Index h = 0; h < nx; ++h)
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        auto mk = tuple_decode(c.members[k], nx, n - 1);
        std::vector<Index> point{h};
        for (Index v : mk) point.push_back(*t.multiply(h, v));
        EndpointFibration::Element e(static_cast<std::size_t>(n) * (m + 1), h);
        for (int j = 1; j < n; ++j)
          for (int time = m - T; time <= m; ++time) {
            int s = T - (time - (m - T));
            auto g = tuple_decode(c.stages[static_cast<std::size_t>(s)][k], nx, n - 1);
            e[static_cast<std::size_t>(j) * (m + 1) + time] = *t.multiply(h, g[j - 1]);
          }
        entries.emplace_back(fib.encode(point), std::move(e));
      }
    std::sort(entries.begin(), entries.end());
    TcSection s;
    for (auto& [v, e] : entries) {
      s.piece.push_back(v);
      s.values.push_back(std::move(e));
    }
    out.pieces.push_back(s.piece);
    out.certificates.push_back(std::move(s));
  }
  return out;
}

inline TcCover constant_section_cover(const EndpointFibration& fib) {
  TcSection s;
  for (Index x = 0; x < fib.space()->size(); ++x) {
    s.piece.push_back(x);
    s.values.push_back(fib.constant_element(x));
  }
  return TcCover{"genus", {s.piece}, {s}};
}

// One section over all of X^n when X contracts within the arm length: arm j
// runs back along the track of x_j, stalling at the constant first.
inline std::optional<TcCover> contraction_section(const EndpointFibration& fib, std::uint64_t budget) {
  NullhomotopyResult c;
  try {
    c = is_contractible(fib.space(), SearchBudget(budget));
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  if (!c.nullhomotopic) return std::nullopt;
  const auto& stages = c.witness->stages;
  const int len = static_cast<int>(c.witness->length()), m = fib.length();
  if (len > m) return std::nullopt;
  TcSection s;
  for (Index v = 0; v < fib.base()->size(); ++v) {
    auto t = fib.decode(v);
    EndpointFibration::Element e(static_cast<std::size_t>(fib.arms()) * (m + 1));
    for (int j = 0; j < fib.arms(); ++j)
      for (int k = 0; k <= m; ++k) e[j * (m + 1) + k] = stages[std::min(len, m - k)](t[j]);
    s.piece.push_back(v);
    s.values.push_back(std::move(e));
  }
  TcCover w{"genus", {s.piece}, {s}};
  if (!verify_tc_cover(fib, w)) return std::nullopt;
  return w;
}

}  // namespace detail

struct GroupTcResult {
  Bounds bounds;
  TcCover witness;
  std::string route;
  std::vector<std::string> notes;
};

// Motion planning on a connected topological group from a cat cover of
// X^{n-1}. Tries, in order: the contractions of the given cover extended to
// the identity tuple; twist-compatible contractions of the same pieces within
// the arm length; an exact cover of X^{n-1} by pieces with such
// contractions. Every candidate is verified section by section.
inline GroupTcResult tc_upper_via_group(const EndpointFibration& fib, const CayleyTable& table,
                                        const CoverWitness<HomotopyWitness>& cat_cover,
                                        const CoverOptions& opts = {}) {
  const auto& x = fib.space();
  if (table.window()) throw Error("tc_upper_via_group: window tables are not groups");
  if (table.carrier()->points() != x->points() || table.carrier()->edges() != x->edges())
    throw Error("tc_upper_via_group: group carrier differs from the fibration's space");
  if (!is_topological_group(table)) throw Error("tc_upper_via_group: table is not a topological group");
  if (!is_connected(*x)) throw Error("tc_upper_via_group: carrier is not connected");
  const int n = fib.arms();
  GroupTcResult out;
  if (n == 1) {
    out.witness = detail::constant_section_cover(fib);
    out.bounds = {1, 1};
    out.route = "constant arms";
    if (!verify_tc_cover(fib, out.witness)) throw ConstructionFailure("constant sections failed verification");
    return out;
  }
  auto pw = power_image(x, n - 1, ProductMode::min);
  NullhomotopyOracle cat_oracle(pw);
  if (!verify_cover(cat_oracle, cat_cover)) throw Error("tc_upper_via_group: cat cover of X^{n-1} does not verify");
  const Index nx = static_cast<Index>(table.order());
  const Index e_tuple =
      detail::tuple_encode(std::vector<Index>(static_cast<std::size_t>(n - 1), table.identity()), nx);
  const int m = fib.length();

  auto accept = [&](const std::vector<detail::Contraction>& cs, const std::string& route) {
    auto w = detail::sections_from_contractions(fib, table, cs);
    if (!verify_tc_cover(fib, w)) return false;
    out.witness = std::move(w);
    out.bounds = {1, static_cast<int>(cs.size())};
    out.route = route;
    return true;
  };

  // Given contractions, extended along a shortest path to the identity tuple.
  std::vector<detail::Contraction> extended;
  std::size_t longest = 0;
  auto dist = graph_distances(*pw, e_tuple);
  for (std::size_t i = 0; i < cat_cover.pieces.size(); ++i) {
    detail::Contraction c{cat_cover.pieces[i], {}};
    for (const auto& st : cat_cover.certificates[i].stages) c.stages.push_back(st.assignment());
    Index cur = c.stages.back().front();
    while (cur != e_tuple) {
      for (Index nb : pw->neighbors(cur))
        if (dist[nb] == dist[cur] - 1) {
          cur = nb;
          break;
        }
      c.stages.emplace_back(c.members.size(), cur);
    }
    longest = std::max(longest, c.stages.size() - 1);
    extended.push_back(std::move(c));
  }
  if (longest <= static_cast<std::size_t>(m)) {
    if (accept(extended, "cover contractions")) return out;
    out.notes.push_back("extended contractions of the cat cover do not give continuous sections");
  } else {
    out.notes.push_back("extended contractions need " + std::to_string(longest) + " steps, arm length is " +
                        std::to_string(m));
  }

  detail::CompatibleContractionOracle oracle(table, pw, n - 1, m);
  std::vector<detail::Contraction> compatible;
  for (const auto& piece : cat_cover.pieces) {
    SearchBudget unlimited;
    auto a = oracle.certify(piece, unlimited);
    if (a.verdict != Verdict::yes) break;
    compatible.push_back(std::move(*a.certificate));
  }
  if (compatible.size() == cat_cover.pieces.size()) {
    if (accept(compatible, "compatible contractions")) return out;
    out.notes.push_back("compatible contractions of the cat pieces failed verification");
  } else {
    out.notes.push_back("some cat piece has no compatible contraction within the arm length");
  }

  if (pw->size() <= opts.exact_guard) {
    auto cover = minimal_cover_exact(oracle, opts);
    if (accept(cover.witness->certificates, "compatible cover")) return out;
  }
  throw ConstructionFailure("group construction produced no verified section cover");
}

struct TcOptions {
  std::optional<int> m;
  FunctionSpaceMode mode = FunctionSpaceMode::pointwise;
  CoverOptions cover;
  std::size_t power_size_limit = 64;
  bool direct_genus = true;  // exact genus sweep when X^n is within the guard
  std::optional<CayleyTable> group;
};

struct TcResult {
  int n = 1;
  int m = 0;
  FunctionSpaceMode mode = FunctionSpaceMode::pointwise;
  Bounds bounds;
  std::optional<TcCover> witness;
  std::shared_ptr<const EndpointFibration> fibration;
  std::vector<std::string> notes;
  bool exact() const { return bounds.exact(); }
};

// TC_n as the genus of the endpoint map e_n, combining:
//   lower: cat(X^{n-1}) and TC_{n-1};
//   upper: exact genus on small powers, the group construction, the gap
//          bound TC_{n-1} + cat(X) for groups, and cat(X^n).
inline TcResult tc_n(const ImagePtr& base, int n, const TcOptions& opts = {}) {
  if (n < 1) throw Error("tc: n must be at least 1");
  if (base->empty()) throw Error("tc: empty base");
  if (!is_connected(*base)) throw Error("tc: base must be connected");
  TcResult r;
  r.n = n;
  r.m = opts.m.value_or(diameter(*base));
  r.mode = opts.mode;
  auto fib = std::make_shared<const EndpointFibration>(base, n, r.m, opts.mode);
  r.fibration = fib;
  if (!fib->is_surjective())
    throw Error("tc: arm length " + std::to_string(r.m) + " is too short, e_" + std::to_string(n) +
                " is not surjective");
  if (n == 1) {
    r.bounds = {1, 1};
    r.witness = detail::constant_section_cover(*fib);
    r.notes.push_back("n=1: constant arms give a global section");
    return r;
  }
  auto raise_lower = [&](int v, const std::string& why) {
    if (v > r.bounds.lower) {
      r.bounds.lower = v;
      r.notes.push_back("lower " + std::to_string(v) + ": " + why);
    }
  };
  auto lower_upper = [&](int v, const std::string& why) {
    if (!r.bounds.upper || v < *r.bounds.upper) {
      r.bounds.upper = v;
      r.notes.push_back("upper " + std::to_string(v) + ": " + why);
    }
  };

  TcResult prev = tc_n(base, n - 1, opts);
  raise_lower(prev.bounds.lower, "TC_" + std::to_string(n - 1) + " <= TC_" + std::to_string(n));

  auto pw = power_image(base, n - 1, ProductMode::min);
  std::optional<CatResult> cat_prev;
  if (pw->size() <= opts.cover.exact_guard) {
    cat_prev = cat(pw, CoverMode::exact, opts.cover);
    raise_lower(cat_prev->bounds.lower, "cat(X^" + std::to_string(n - 1) + ") exact");
  } else {
    auto probe = cat_probe(pw, opts.cover.call_budget);
    raise_lower(probe.lower, "X^" + std::to_string(n - 1) + " is not contractible");
  }

  if (r.bounds.lower == 1)
    if (auto w = detail::contraction_section(*fib, opts.cover.call_budget)) {
      r.bounds = {1, 1};
      r.witness = std::move(*w);
      r.notes.push_back("upper 1: X contracts within the arm length");
      return r;
    }

  if (opts.direct_genus && fib->base()->size() <= opts.cover.exact_guard) {
    auto g = schwarz_genus<EndpointFibration>(fib, CoverMode::exact, opts.cover);
    if (g.bounds.lower < r.bounds.lower)
      throw ConstructionFailure("tc: exact genus " + std::to_string(g.bounds.lower) + " below lower bound " +
                                std::to_string(r.bounds.lower));
    r.bounds = g.bounds;
    r.notes.push_back("exact genus of e_" + std::to_string(n));
    r.witness = std::move(g.witness);
    return r;
  }

  if (opts.group && opts.mode == FunctionSpaceMode::pointwise && cat_prev) {
    auto g = tc_upper_via_group(*fib, *opts.group, *cat_prev->witness, opts.cover);
    for (auto& note : g.notes) r.notes.push_back(note);
    lower_upper(*g.bounds.upper, "group sections (" + g.route + ")");
    r.witness = std::move(g.witness);
  } else if (opts.group && opts.mode != FunctionSpaceMode::pointwise) {
    r.notes.push_back("group construction applies to pointwise mode only");
  }

  if (opts.group && !r.bounds.exact()) {
    Bounds cx = base->size() <= opts.cover.exact_guard ? cat(base, CoverMode::exact, opts.cover).bounds
                                                       : cat(base, CoverMode::bounds, opts.cover).bounds;
    auto gap = tc_gap_bound(prev.bounds, cx);
    if (gap.upper) lower_upper(*gap.upper, "TC_" + std::to_string(n - 1) + " + cat(X)");
  }

  if (!r.bounds.exact() && fib->base()->size() <= opts.power_size_limit) {
    auto c = cat(fib->base(), CoverMode::bounds, opts.cover);
    if (c.bounds.upper) lower_upper(*c.bounds.upper, "cat(X^" + std::to_string(n) + ")");
  }

  if (r.bounds.upper && *r.bounds.upper < r.bounds.lower)
    throw ConstructionFailure("tc: upper bound " + std::to_string(*r.bounds.upper) + " below lower bound " +
                              std::to_string(r.bounds.lower));
  return r;
}

}  // namespace dtop
