// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dtop/corpus.hpp"
#include "dtop/group.hpp"
#include "dtop/lsc_tc.hpp"
#include "dtop/reproduction.hpp"
#include "oracles.hpp"

using namespace dtop;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Checker {
  Outcome out;
  void require(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

Index hp(const ImagePtr& h, char c) { return h->index_of(corpus::h_point(c)); }

std::vector<Index> letters(const ImagePtr& h, const std::string& s) {
  std::vector<Index> v;
  for (char c : s) v.push_back(hp(h, c));
  std::sort(v.begin(), v.end());
  return v;
}

Outcome cat_reproduction() {
  Checker c;
  auto h = corpus::H();
  auto r = cat(h, CoverMode::exact);
  c.require(r.exact() && r.bounds.lower == 2, "cat(H) = " + r.bounds.str());
  c.require(r.witness && r.witness->pieces.size() == 2, "cover does not have 2 pieces");
  c.require(r.witness && verify_cover(NullhomotopyOracle(h), *r.witness), "cover does not verify");
  NullhomotopyOracle o(h);
  for (const std::string& s : {"bcde", "afgh"}) {
    SearchBudget b;
    auto a = o.certify(letters(h, s), b);
    c.require(a.verdict == Verdict::yes && o.verify(letters(h, s), *a.certificate), "piece " + s + " not admissible");
  }
  return c.out;
}

Outcome homotopy_tables() {
  Checker c;
  auto h = corpus::H();
  auto w1 = corpus::f1(h), w2 = corpus::f2(h);
  auto s1 = w1.front().domain(), s2 = w2.front().domain();
  c.require(verify_homotopy(w1, DigitalMap::inclusion(s1, h), DigitalMap::constant(s1, h, hp(h, 'e'))).ok,
            "F1 fails");
  c.require(verify_homotopy(w2, DigitalMap::inclusion(s2, h), DigitalMap::constant(s2, h, hp(h, 'a'))).ok,
            "F2 fails");
  return c.out;
}

Outcome tc_reproduction() {
  Checker c;
  auto h = corpus::H();
  auto t1 = tc_n(h, 1);
  c.require(t1.bounds.str() == "1", "TC_1 = " + t1.bounds.str());
  TcOptions o;
  o.group = corpus::h_group(h);
  auto t2 = tc_n(h, 2, o);
  c.require(t2.m == 4, "m = " + std::to_string(t2.m));
  c.require(t2.exact() && t2.bounds.lower == 2, "TC_2 = " + t2.bounds.str());
  c.require(t2.bounds.lower == cat(h).bounds.lower, "lower bound is not cat(H)");
  c.require(t2.fibration && t2.fibration->base()->size() == 64, "base is not 64 points");
  c.require(t2.witness && t2.witness->pieces.size() == 2 && verify_tc_cover(*t2.fibration, *t2.witness),
            "section cover does not verify");
  // The upper bound must come from the group construction.
  auto g = tc_upper_via_group(*t2.fibration, *o.group, *cat(h).witness);
  c.require(g.bounds.upper && *g.bounds.upper == 2 && verify_tc_cover(*t2.fibration, g.witness),
            "group construction failed");
  return c.out;
}

Outcome tc3_bound() {
  Checker c;
  TcOptions o;
  o.group = corpus::h_group();
  auto t3 = tc_n(corpus::H(), 3, o);
  c.require(t3.bounds.upper && *t3.bounds.upper <= 4, "TC_3 upper = " + t3.bounds.str());
  c.require(t3.bounds.lower == 2, "TC_3 lower = " + std::to_string(t3.bounds.lower));
  auto rows = reproduce();
  bool marked = false;
  for (const auto& r : rows)
    if (r.claim.rfind("TC_3", 0) == 0) marked = r.status == "within paper bound";
  c.require(marked, "TC_3 row is not marked as within bound");
  return c.out;
}

Outcome topological_groups() {
  Checker c;
  c.require(is_topological_group(corpus::h_group()).ok(), "H group");
  c.require(is_topological_group(corpus::pm1_group()).ok(), "{-1,1}");
  c.require(is_topological_group(corpus::e2_group()).ok(), "[8,9]");
  auto t = corpus::zadd(0, 12);
  c.require(is_continuous(multiplication_map(t, ProductMode::min)).continuous, "alpha under min product");
  auto st = multiplication_map(t, ProductMode::strong);
  const auto& d = *st.domain();
  Index p = d.index_of(Point({3, 5})), q = d.index_of(Point({4, 6}));
  bool found = false;
  for (auto [i, j] : continuity_violations(st))
    found = found || ((i == p && j == q) || (i == q && j == p));
  c.require(found, "strong-product violation at (3,5),(4,6) missing");
  c.require(st.apply(Point({3, 5})) == Point({8}) && st.apply(Point({4, 6})) == Point({10}), "images are not 8, 10");
  return c.out;
}

Outcome prime_intervals() {
  Checker c;
  for (auto [p, want] : {std::pair{3, 3u}, std::pair{5, 30u}}) {
    auto scan = interval_group_scan(p);
    c.require(scan.entries.size() == want, "p=" + std::to_string(p) + ": " + std::to_string(scan.entries.size()));
    c.require(scan.entries.size() == oracle::labeled_group_count(static_cast<std::size_t>(p)),
              "count disagrees with n!/|Aut|");
    c.require(scan.topological() == 0, "a topological structure was found");
    for (const auto& e : scan.entries)
      c.require((!e.verdict.alpha_continuous && e.verdict.alpha_witness) ||
                    (!e.verdict.beta_continuous && e.verdict.beta_witness),
                "a structure fails without a witness");
  }
  return c.out;
}

Outcome isomorphism_examples() {
  Checker c;
  auto z = corpus::zadd(-3, 3);
  auto z2 = product_group(z, z);
  auto proj = DigitalMap::from_function(z2.carrier(), z.carrier(), [](const Point& p) { return Point({p[0]}); });
  auto r = check_homomorphism(proj, z2, z);
  c.require(r.top_homomorphism() && !r.top_isomorphism(), "projection");
  auto g = corpus::pm1_group(), t = corpus::e2_group();
  auto f = DigitalMap::from_function(g.carrier(), t.carrier(), [](const Point& p) { return Point({p[0] == 1 ? 8 : 9}); });
  auto s = check_homomorphism(f, g, t);
  c.require(s.group_isomorphism() && s.continuous && !s.inverse_continuous, "1 -> 8, -1 -> 9");
  return c.out;
}

Outcome property_suites() {
  Checker c;
  std::mt19937 rng(20240611);

  // (a) edge check against the subset definition.
  int disagreements = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto dom = oracle::random_grid_image(rng, 10, 4, 1 + trial % 2);
    auto cod = oracle::random_grid_image(rng, 10, 4, 1 + (trial / 2) % 2);
    auto dm = oracle::matrix(*dom), cm = oracle::matrix(*cod);
    auto a = oracle::random_map(rng, dm, cm);
    if (is_continuous(DigitalMap(dom, cod, a)).continuous != oracle::continuous_by_subsets(dm, cm, a))
      ++disagreements;
  }
  c.require(disagreements == 0, "(a) " + std::to_string(disagreements) + " disagreements");

  // (b) invariance under random isomorphisms of H.
  auto h = corpus::H();
  auto table = corpus::h_group(h);
  for (int i = 0; i < 3; ++i) {
    auto rl = oracle::relabel(h, rng);
    c.require(is_digital_isomorphism(rl.iso).ok(), "(b) relabeling is not an isomorphism");
    c.require(cat(rl.image).bounds.str() == "2", "(b) cat changed");
    TcOptions o;
    o.group = transport(table, rl.iso);
    auto t = tc_n(rl.image, 2, o);
    c.require(t.bounds.str() == "2" && verify_tc_cover(*t.fibration, *t.witness), "(b) TC_2 changed");
  }

  // (c) c2 never needs more pieces than c1.
  for (int trial = 0; trial < 50; ++trial) {
    auto a = oracle::random_grid_image(rng, 9, 4, 1);
    auto b = DigitalImage::make_ck(a->points(), 2, "c2");
    auto c1 = cat(a), c2 = cat(b);
    c.require(c2.bounds.lower <= c1.bounds.lower, "(c) cat_c2 > cat_c1 on " + serialize_image(*a));
  }

  // (d) cat(X^{n-1}) <= TC_n <= cat(X^n) where all three compute.
  struct Case {
    ImagePtr img;
    std::optional<CayleyTable> group;
    int n;
  };
  for (const auto& k : std::vector<Case>{{interval_image(0, 1), std::nullopt, 2},
                                         {interval_image(0, 1), std::nullopt, 3},
                                         {interval_image(0, 2), std::nullopt, 2},
                                         {corpus::cycle(4), std::nullopt, 2},
                                         {h, table, 2}}) {
    TcOptions o;
    o.group = k.group;
    auto t = tc_n(k.img, k.n, o);
    auto lo = cat(power_image(k.img, k.n - 1, ProductMode::min));
    c.require(lo.bounds.lower <= t.bounds.lower, "(d) lower side on " + k.img->label());
    auto top = power_image(k.img, k.n, ProductMode::min);
    if (top->size() <= 14 && t.bounds.upper) c.require(*t.bounds.upper <= *cat(top).bounds.upper, "(d) upper side");
  }

  // (e) genus of a product is at most the sum.
  {
    auto i = interval_image(0, 1);
    auto e1 = std::make_shared<const EndpointFibration>(i, 1, 1, FunctionSpaceMode::pointwise);
    auto e2 = std::make_shared<const EndpointFibration>(i, 2, 1, FunctionSpaceMode::pointwise);
    auto p = std::make_shared<const ProductFibration<EndpointFibration, EndpointFibration>>(e2, e1);
    auto g1 = schwarz_genus(e1), g2 = schwarz_genus(e2);
    auto gp = schwarz_genus(p);
    c.require(gp.bounds.lower <= g1.bounds.lower + g2.bounds.lower, "(e) on [0,1]");
    TcOptions o;
    o.group = table;
    auto t2 = tc_n(h, 2, o), t1 = tc_n(h, 1, o);
    ProductFibration<EndpointFibration, EndpointFibration> ph(t2.fibration, t1.fibration);
    auto built = product_section_cover(ph, *t2.witness, *t1.witness);
    std::vector<char> covered(ph.base()->size(), 0);
    bool ok = true;
    for (const auto& s : built.certificates) {
      ok = ok && verify_section(s, ph).ok;
      for (Index v : s.piece) covered[v] = 1;
    }
    ok = ok && std::all_of(covered.begin(), covered.end(), [](char x) { return x != 0; });
    c.require(ok && built.pieces.size() <= 3, "(e) on H");
  }

  // (f) products of corpus groups and subgroups of the H group.
  std::vector<CayleyTable> gs{table, corpus::pm1_group(), corpus::e2_group(), corpus::cyclic(4), corpus::zadd(-2, 2)};
  for (std::size_t a = 0; a < gs.size(); ++a)
    for (std::size_t b = 0; b < gs.size(); ++b)
      if (gs[a].order() * gs[b].order() <= 64) c.require(is_topological_group(product_group(gs[a], gs[b])).ok(), "(f) product");
  auto subs = subgroups(table);
  c.require(subs.size() == 4, "(f) the H group has " + std::to_string(subs.size()) + " subgroups");
  for (const auto& s : subs) c.require(subgroup_check(table, s).ok(), "(f) subgroup");
  return c.out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "cat(H) = 2 with verified cover", 60, cat_reproduction},
      {2, "F1 and F2 stage tables verify", 1, homotopy_tables},
      {3, "TC_1(H) = 1 and TC_2(H) = 2 from the group construction", 600, tc_reproduction},
      {4, "TC_3(H) <= 4 with lower bound 2", 5, tc3_bound},
      {5, "topological group verdicts and the strong-product failure", 10, topological_groups},
      {6, "interval scans for p = 3 and p = 5", 120, prime_intervals},
      {7, "homomorphism and isomorphism examples", 1, isomorphism_examples},
      {8, "property suites", 900, property_suites},
  };
  bool all_ok = true;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && s > c.limit_s) o = {false, "took longer than " + std::to_string(c.limit_s) + " s"};
    all_ok = all_ok && o.pass;
    std::printf("%s %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, s, o.pass ? "" : " - ",
                o.detail.c_str());
  }
  return all_ok ? 0 : 1;
}
