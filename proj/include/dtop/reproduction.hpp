#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dtop/corpus.hpp"
#include "dtop/group.hpp"
#include "dtop/homotopy.hpp"
#include "dtop/lsc_tc.hpp"

namespace dtop {

struct ReproRow {
  std::string claim;
  std::string expected;
  std::string computed;
  std::string status;  // "match", "mismatch" or "within paper bound"
};

struct ReproOptions {
  std::uint64_t budget = 200'000;
  bool perturb = false;  // run everything on H with one edge removed
};

inline bool all_match(const std::vector<ReproRow>& rows) {
  for (const auto& r : rows)
    if (r.status == "mismatch") return false;
  return true;
}

inline std::vector<ReproRow> reproduce(const ReproOptions& opts = {}) {
  std::vector<ReproRow> rows;
  const ImagePtr h = opts.perturb ? corpus::perturbed_H() : corpus::H();
  CoverOptions cover;
  cover.call_budget = opts.budget;

  // Each check returns the computed value as text; errors become mismatches.
  auto row = [&](const std::string& claim, const std::string& expected, const std::function<std::string()>& run) {
    ReproRow r{claim, expected, "", ""};
    try {
      r.computed = run();
      r.status = r.computed == expected ? "match" : "mismatch";
    } catch (const std::exception& e) {
      r.computed = std::string("error: ") + e.what();
      r.status = "mismatch";
    }
    rows.push_back(std::move(r));
  };
  auto yes_no = [](bool b) { return std::string(b ? "true" : "false"); };
  auto hp = [&](char c) { return h->index_of(corpus::h_point(c)); };

  row("(3,5) and (4,6) are c2-adjacent", "true",
      [&] { return yes_no(ck_adjacent(Point({3, 5}), Point({4, 6}), 2)); });
  row("a and b are adjacent in H", "true", [&] { return yes_no(h->adjacent(hp('a'), hp('b'))); });
  row("H is connected", "true", [&] { return yes_no(is_connected(*h)); });
  row("inclusion M1 -> H is continuous", "true", [&] {
    auto sub = induced_subimage(h, corpus::h_points("bcde"));
    return yes_no(is_continuous(DigitalMap::inclusion(sub, h)).continuous);
  });

  auto sum_map = [](ProductMode mode) {
    auto z = interval_image(0, 6);
    return DigitalMap::from_function(product_image(z, z, mode), interval_image(0, 12),
                                     [](const Point& p) { return Point({p.coords()[0] + p.coords()[1]}); });
  };
  row("sum map on [0,6]^2 is continuous under the minimal product", "true",
      [&] { return yes_no(is_continuous(sum_map(ProductMode::min)).continuous); });
  row("sum map fails under the strong product at (3,5),(4,6) -> 8,10", "true", [&] {
    auto f = sum_map(ProductMode::strong);
    const auto& d = *f.domain();
    Index p = d.index_of(Point({3, 5})), q = d.index_of(Point({4, 6}));
    for (auto [i, j] : continuity_violations(f))
      if (((i == p && j == q) || (i == q && j == p)) && f.codomain()->point(f(p)) == Point({8}) &&
          f.codomain()->point(f(q)) == Point({10}))
        return yes_no(true);
    return yes_no(false);
  });

  row("F1 is a homotopy from i1 to the constant at e", "true", [&] {
    auto w = corpus::f1(h);
    auto sub = w.front().domain();
    return yes_no(verify_homotopy(w, DigitalMap::inclusion(sub, h), DigitalMap::constant(sub, h, hp('e'))).ok);
  });
  row("F2 is a homotopy from i2 to the constant at a", "true", [&] {
    auto w = corpus::f2(h);
    auto sub = w.front().domain();
    return yes_no(verify_homotopy(w, DigitalMap::inclusion(sub, h), DigitalMap::constant(sub, h, hp('a'))).ok);
  });
  row("i1 is nullhomotopic with a witness of length <= 3", "true", [&] {
    auto sub = induced_subimage(h, corpus::h_points("bcde"));
    auto r = are_homotopic(DigitalMap::inclusion(sub, h), DigitalMap::constant(sub, h, hp('e')));
    return yes_no(r.homotopic && r.witness->length() <= 3);
  });
  row("H is not contractible", "false", [&] { return yes_no(is_contractible(h).nullhomotopic); });
  row("H is not homotopy equivalent to a point", "false", [&] {
    auto pt = DigitalImage::make_ck({Point({0, 0})}, 1, "point");
    return to_string(are_homotopy_equivalent(h, pt).verdict);
  });

  row("M1 and M2 are admissible for cat", "true", [&] {
    NullhomotopyOracle o(h);
    SearchBudget b1, b2;
    std::vector<Index> m1, m2;
    for (char c : std::string("bcde")) m1.push_back(hp(c));
    for (char c : std::string("afgh")) m2.push_back(hp(c));
    std::sort(m1.begin(), m1.end());
    std::sort(m2.begin(), m2.end());
    return yes_no(o.certify(m1, b1).verdict == Verdict::yes && o.certify(m2, b2).verdict == Verdict::yes);
  });
  row("cat(H) = 2", "2", [&] {
    auto r = cat(h, CoverMode::exact, cover);
    if (!verify_cover(NullhomotopyOracle(h), *r.witness)) return std::string("unverified cover");
    return r.bounds.str();
  });

  TcOptions tco;
  tco.cover = cover;
  auto table = [&] { return corpus::h_group(h); };
  row("TC_1(H) = 1", "1", [&] { return tc_n(h, 1, tco).bounds.str(); });
  row("TC_2(H) = 2", "2", [&] {
    auto o = tco;
    o.group = table();
    auto r = tc_n(h, 2, o);
    if (!r.witness || !verify_tc_cover(*r.fibration, *r.witness)) return std::string("unverified cover");
    return r.bounds.str();
  });
  {
    ReproRow r{"TC_3(H) <= 4", "<= 4", "", ""};
    try {
      auto o = tco;
      o.group = table();
      auto b = tc_n(h, 3, o).bounds;
      r.computed = b.str();
      if (b.upper && *b.upper <= 4)
        r.status = b.exact() ? "match" : "within paper bound";
      else
        r.status = "mismatch";
    } catch (const std::exception& e) {
      r.computed = std::string("error: ") + e.what();
      r.status = "mismatch";
    }
    rows.push_back(std::move(r));
  }
  row("genus of e1 x e2 on H is at most 3", "<= 3", [&] {
    auto o = tco;
    o.group = table();
    auto b = genus_product_bound(tc_n(h, 2, o).bounds, tc_n(h, 1, o).bounds);
    return b.upper && *b.upper <= 3 ? std::string("<= 3") : b.str();
  });

  row("the H group table satisfies the group axioms with identity b", "true", [&] {
    auto t = table();
    return yes_no(verify_cayley(t).ok() && t.identity() == hp('b'));
  });
  row("(H, c1, +) is a topological group", "true", [&] { return yes_no(is_topological_group(table()).ok()); });
  row("({-1,1}, .) is a topological group", "true",
      [&] { return yes_no(is_topological_group(corpus::pm1_group()).ok()); });
  row("([8,9], *) is a topological group", "true", [&] { return yes_no(is_topological_group(corpus::e2_group()).ok()); });
  row("multiplication on [1,2] has no inverse for 2", "false",
      [&] { return yes_no(verify_cayley(corpus::zmul(1, 2)).inverses); });
  row("cyclic [m,m+2] with identity m fails inversion continuity", "false", [&] {
    auto carrier = interval_image(5, 7);
    auto t = CayleyTable::from_operation(carrier, Point({5}), [](const Point& x, const Point& y) -> std::optional<Point> {
      return Point({5 + (x.coords()[0] - 5 + y.coords()[0] - 5) % 3});
    });
    return yes_no(is_topological_group(t).beta_continuous);
  });
  for (int p : {3, 5}) {
    row("no 2-topological group on an interval of " + std::to_string(p) + " points", "0", [&] {
      return std::to_string(interval_group_scan(p).topological());
    });
  }
  row("projection of the Z^2 window onto Z is a topological homomorphism", "true", [&] {
    auto z = corpus::zadd(-3, 3);
    auto z2 = product_group(z, z);
    auto proj = DigitalMap::from_function(z2.carrier(), z.carrier(),
                                          [](const Point& p) { return Point({p.coords()[0]}); });
    auto r = check_homomorphism(proj, z2, z);
    return yes_no(r.top_homomorphism() && !r.top_isomorphism());
  });
  row("1 -> 8, -1 -> 9 has a discontinuous inverse", "false", [&] {
    auto g = corpus::pm1_group();
    auto t = corpus::e2_group();
    auto f = DigitalMap::from_function(g.carrier(), t.carrier(),
                                       [](const Point& p) { return Point({p.coords()[0] == 1 ? 8 : 9}); });
    auto r = check_homomorphism(f, g, t);
    if (!r.group_isomorphism() || !r.continuous) return std::string("not a continuous group isomorphism");
    return yes_no(r.inverse_continuous);
  });
  row("Z^2 window with + is a topological group", "true",
      [&] { return yes_no(is_topological_group(corpus::group("z2add:-3:3")).ok()); });
  row("{b,c} is not a subgroup of the H group", "not a subgroup", [&] {
    auto t = table();
    try {
      subgroup_check(t, {hp('b'), hp('c')});
      return std::string("subgroup");
    } catch (const NotASubgroup&) {
      return std::string("not a subgroup");
    }
  });
  return rows;
}

}  // namespace dtop
