#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dtop/corpus.hpp"
#include "dtop/group.hpp"
#include "oracles.hpp"

using namespace dtop;

TEST(Group, HGroupAxioms) {
  auto h = corpus::H();
  auto t = corpus::h_group(h);
  auto rep = verify_cayley(t);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(t.identity(), h->index_of(corpus::h_point('b')));
  // Oracle: the letter table is a group by brute force.
  oracle::Table lab(64);
  const std::string letters = "abcdefgh";
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) lab[r * 8 + c] = static_cast<Index>(letters.find(corpus::h_rows[r][c]));
  EXPECT_TRUE(oracle::is_group(lab, 8));
}

TEST(Group, CorpusGroupsAreTopological) {
  EXPECT_TRUE(is_topological_group(corpus::h_group()).ok());
  EXPECT_TRUE(is_topological_group(corpus::pm1_group()).ok());
  EXPECT_TRUE(is_topological_group(corpus::e2_group()).ok());
  EXPECT_TRUE(is_topological_group(corpus::cyclic(4)).ok());
  EXPECT_TRUE(is_topological_group(corpus::zadd(-4, 4)).ok());
  EXPECT_TRUE(is_topological_group(corpus::group("z2add:-2:2")).ok());
}

TEST(Group, MultiplicationWindowHasNoInverses) {
  auto rep = verify_cayley(corpus::zmul(1, 2));
  EXPECT_FALSE(rep.inverses);
}

TEST(Group, StrongProductBreaksAddition) {
  auto t = corpus::zadd(-12, 12);
  EXPECT_TRUE(is_topological_group(t, ProductMode::min).alpha_continuous);
  auto v = is_topological_group(t, ProductMode::strong);
  EXPECT_FALSE(v.alpha_continuous);
  ASSERT_TRUE(v.alpha_witness);
}

TEST(Group, ThreePointCyclicFailsInversion) {
  auto carrier = interval_image(5, 7);
  auto t = CayleyTable::from_operation(carrier, Point({5}), [](const Point& x, const Point& y) -> std::optional<Point> {
    return Point({5 + (x[0] - 5 + y[0] - 5) % 3});
  });
  auto v = is_topological_group(t);
  EXPECT_TRUE(v.axioms.ok());
  EXPECT_FALSE(v.beta_continuous);
  ASSERT_TRUE(v.beta_witness);
}

TEST(Group, EnumerationMatchesBruteForce) {
  for (int n = 1; n <= 3; ++n) {
    auto got = enumerate_group_structures(n);
    auto want = oracle::all_groups(static_cast<std::size_t>(n));
    std::set<std::vector<Index>> a(got.begin(), got.end()), b(want.begin(), want.end());
    EXPECT_EQ(a, b) << "n=" << n;
    EXPECT_EQ(got.size(), a.size());
  }
}

TEST(Group, EnumerationCountsMatchAutomorphismArithmetic) {
  for (int n = 1; n <= 6; ++n) {
    auto got = enumerate_group_structures(n);
    EXPECT_EQ(got.size(), oracle::labeled_group_count(static_cast<std::size_t>(n))) << "n=" << n;
    for (const auto& t : got) ASSERT_TRUE(oracle::is_group(t, static_cast<std::size_t>(n)));
  }
  EXPECT_THROW(enumerate_group_structures(7), BudgetExceeded);
}

TEST(Group, IntervalScansHaveNoTopologicalGroup) {
  for (int p : {2, 3, 5}) {
    auto scan = interval_group_scan(p);
    EXPECT_EQ(scan.entries.size(), oracle::labeled_group_count(static_cast<std::size_t>(p)));
    if (p == 2) {
      // Two adjacent points: every map into a connected two-point set is continuous.
      EXPECT_EQ(scan.topological(), scan.entries.size());
      continue;
    }
    EXPECT_EQ(scan.topological(), 0u) << "p=" << p;
    for (const auto& e : scan.entries) {
      EXPECT_TRUE(e.verdict.axioms.ok());
      EXPECT_TRUE((!e.verdict.alpha_continuous && e.verdict.alpha_witness) ||
                  (!e.verdict.beta_continuous && e.verdict.beta_witness));
    }
  }
}

TEST(Group, ProjectionIsHomomorphismNotIsomorphism) {
  auto z = corpus::zadd(-3, 3);
  auto z2 = product_group(z, z);
  auto proj = DigitalMap::from_function(z2.carrier(), z.carrier(), [](const Point& p) { return Point({p[0]}); });
  auto r = check_homomorphism(proj, z2, z);
  EXPECT_TRUE(r.top_homomorphism());
  EXPECT_FALSE(r.bijective);
  EXPECT_FALSE(r.top_isomorphism());
}

TEST(Group, GroupIsomorphismWithDiscontinuousInverse) {
  auto g = corpus::pm1_group();
  auto t = corpus::e2_group();
  auto f = DigitalMap::from_function(g.carrier(), t.carrier(), [](const Point& p) { return Point({p[0] == 1 ? 8 : 9}); });
  auto r = check_homomorphism(f, g, t);
  EXPECT_TRUE(r.group_isomorphism());
  EXPECT_TRUE(r.continuous);
  EXPECT_FALSE(r.inverse_continuous);
  EXPECT_FALSE(is_top_isomorphism(f, g, t));
  EXPECT_TRUE(is_top_homomorphism(f, g, t));
}

TEST(Group, NonHomomorphismIsReported) {
  auto t = corpus::h_group();
  auto shift = DigitalMap::from_function(t.carrier(), t.carrier(), [](const Point& p) {
    // Rotate H one step: a -> b -> ... -> h -> a.
    const std::string letters = "abcdefgh";
    for (std::size_t i = 0; i < 8; ++i)
      if (corpus::h_point(letters[i]) == p) return corpus::h_point(letters[(i + 1) % 8]);
    return p;
  });
  auto r = check_homomorphism(shift, t, t);
  EXPECT_TRUE(r.continuous);
  EXPECT_FALSE(r.homomorphism);
}

TEST(Group, ProductsOfCorpusGroupsAreTopological) {
  std::vector<CayleyTable> gs{corpus::pm1_group(), corpus::e2_group(), corpus::cyclic(4), corpus::zadd(-2, 2)};
  for (const auto& a : gs)
    for (const auto& b : gs) {
      auto p = product_group(a, b);
      EXPECT_EQ(p.order(), a.order() * b.order());
      EXPECT_TRUE(is_topological_group(p).ok());
    }
}

TEST(Group, SubgroupsOfHGroup) {
  auto h = corpus::H();
  auto t = corpus::h_group(h);
  auto subs = subgroups(t);
  // A cyclic group of order 8 has one subgroup per divisor.
  EXPECT_EQ(subs.size(), 4u);
  for (const auto& s : subs) EXPECT_TRUE(subgroup_check(t, s).ok()) << s.size();
  std::vector<Index> even;
  for (char c : std::string("bdfh")) even.push_back(h->index_of(corpus::h_point(c)));
  std::sort(even.begin(), even.end());
  EXPECT_TRUE(subgroup_check(t, even).ok());
  EXPECT_EQ(induced_table(t, even).carrier()->edge_count(), 0u);
  EXPECT_TRUE(subgroup_check(t, {t.identity()}).ok());
  EXPECT_THROW(subgroup_check(t, {h->index_of(corpus::h_point('b')), h->index_of(corpus::h_point('c'))}),
               NotASubgroup);
}

TEST(Group, RelabeledGroupsStayTopological) {
  std::mt19937 rng(21);
  for (const auto& t : {corpus::h_group(), corpus::cyclic(8), corpus::e2_group()}) {
    auto rl = oracle::relabel(t.carrier(), rng);
    EXPECT_TRUE(is_topological_group(transport(t, rl.iso)).ok());
  }
}
