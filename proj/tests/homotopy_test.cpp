#include <gtest/gtest.h>

#include <random>

#include "dtop/corpus.hpp"
#include "dtop/homotopy.hpp"
#include "oracles.hpp"

using namespace dtop;

TEST(Continuity, EdgeCheckMatchesSubsetDefinition) {
  std::mt19937 rng(2024);
  int continuous = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto dom = oracle::random_grid_image(rng, 10, 4, 1 + trial % 2);
    auto cod = oracle::random_grid_image(rng, 10, 4, 1 + (trial / 2) % 2);
    auto dm = oracle::matrix(*dom), cm = oracle::matrix(*cod);
    auto a = oracle::random_map(rng, dm, cm);
    DigitalMap f(dom, cod, a);
    bool want = oracle::continuous_by_subsets(dm, cm, a);
    ASSERT_EQ(is_continuous(f).continuous, want) << "trial " << trial;
    EXPECT_EQ(continuity_violations(f).empty(), want);
    continuous += want;
  }
  // Both outcomes must be exercised.
  EXPECT_GT(continuous, 50);
  EXPECT_LT(continuous, 450);
}

TEST(Continuity, LibraryOracleAgrees) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto dom = oracle::random_grid_image(rng, 8, 4, 1);
    auto cod = oracle::random_grid_image(rng, 8, 4, 2);
    auto a = oracle::random_map(rng, oracle::matrix(*dom), oracle::matrix(*cod));
    DigitalMap f(dom, cod, a);
    EXPECT_EQ(is_continuous_oracle(f), is_continuous(f).continuous);
  }
}

TEST(Continuity, CompositionOfContinuousMaps) {
  std::mt19937 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    auto x = oracle::random_grid_image(rng, 6, 3, 1);
    auto y = oracle::random_grid_image(rng, 6, 3, 2);
    auto z = oracle::random_grid_image(rng, 6, 3, 1);
    DigitalMap f(x, y, oracle::random_map(rng, oracle::matrix(*x), oracle::matrix(*y)));
    DigitalMap g(y, z, oracle::random_map(rng, oracle::matrix(*y), oracle::matrix(*z)));
    if (!is_continuous(f) || !is_continuous(g)) continue;
    ++checked;
    EXPECT_TRUE(is_continuous(compose(g, f)).continuous);
  }
  EXPECT_GE(checked, 20);
}

TEST(Continuity, SumMapMinVersusStrong) {
  auto z = interval_image(0, 6);
  auto sum = [](const Point& p) { return Point({p[0] + p[1]}); };
  DigitalMap mn = DigitalMap::from_function(product_image(z, z, ProductMode::min), interval_image(0, 12), sum);
  DigitalMap st = DigitalMap::from_function(product_image(z, z, ProductMode::strong), interval_image(0, 12), sum);
  EXPECT_TRUE(is_continuous(mn).continuous);
  auto bad = continuity_violations(st);
  const auto& d = *st.domain();
  Index p = d.index_of(Point({3, 5})), q = d.index_of(Point({4, 6}));
  bool found = false;
  for (auto [i, j] : bad) found = found || (i == std::min(p, q) && j == std::max(p, q)) || (i == q && j == p);
  EXPECT_TRUE(found);
  EXPECT_EQ(st.apply(Point({3, 5})), Point({8}));
  EXPECT_EQ(st.apply(Point({4, 6})), Point({10}));
}

TEST(Homotopy, ExampleStageTables) {
  auto h = corpus::H();
  auto e = h->index_of(corpus::h_point('e')), a = h->index_of(corpus::h_point('a'));
  auto w1 = corpus::f1(h), w2 = corpus::f2(h);
  auto s1 = w1.front().domain(), s2 = w2.front().domain();
  EXPECT_TRUE(verify_homotopy(w1, DigitalMap::inclusion(s1, h), DigitalMap::constant(s1, h, e)).ok);
  EXPECT_TRUE(verify_homotopy(w2, DigitalMap::inclusion(s2, h), DigitalMap::constant(s2, h, a)).ok);
  // Swapping the endpoints must fail.
  EXPECT_FALSE(verify_homotopy(w1, DigitalMap::inclusion(s1, h), DigitalMap::constant(s1, h, a)).ok);
}

TEST(Homotopy, BrokenStageIsRejected) {
  auto h = corpus::H();
  auto bad = corpus::letter_homotopy("bcde", {"bcde", "eede", "eeee"}, h);  // b jumps two steps
  auto sub = bad.front().domain();
  EXPECT_FALSE(verify_homotopy(bad, DigitalMap::inclusion(sub, h), bad.stages.back()).ok);
}

TEST(Homotopy, SearchMatchesExhaustiveDistance) {
  std::mt19937 rng(99);
  int pairs = 0;
  for (int trial = 0; trial < 300 && pairs < 40; ++trial) {
    auto dom = oracle::random_grid_image(rng, 3, 3, 1);
    auto cod = oracle::random_grid_image(rng, 5, 3, 1 + trial % 2);
    auto dm = oracle::matrix(*dom), cm = oracle::matrix(*cod);
    auto a = oracle::random_map(rng, dm, cm), b = oracle::random_map(rng, dm, cm);
    DigitalMap f(dom, cod, a), g(dom, cod, b);
    if (!is_continuous(f) || !is_continuous(g)) continue;
    ++pairs;
    int d = oracle::homotopy_distance(dm, cm, a, b);
    auto r = are_homotopic(f, g);
    ASSERT_EQ(r.homotopic, d >= 0);
    if (r.homotopic) {
      EXPECT_EQ(static_cast<int>(r.witness->length()), d);
      EXPECT_TRUE(verify_homotopy(*r.witness, f, g).ok);
    }
  }
  EXPECT_GE(pairs, 20);
}

TEST(Homotopy, EquivalenceRelation) {
  auto h = corpus::H();
  auto sub = induced_subimage(h, corpus::h_points("bcdef"));
  auto inc = DigitalMap::inclusion(sub, h);
  auto f = corpus::f1(h);
  auto r0 = are_homotopic(inc, inc);
  ASSERT_TRUE(r0.homotopic);
  EXPECT_EQ(r0.witness->length(), 0u);

  auto c_e = DigitalMap::constant(sub, h, h->index_of(corpus::h_point('e')));
  auto c_b = DigitalMap::constant(sub, h, h->index_of(corpus::h_point('b')));
  auto ab = are_homotopic(inc, c_e), bc = are_homotopic(c_e, c_b);
  ASSERT_TRUE(ab.homotopic && bc.homotopic);
  EXPECT_TRUE(verify_homotopy(reversed(*ab.witness), c_e, inc).ok);
  EXPECT_TRUE(verify_homotopy(concatenated(*ab.witness, *bc.witness), inc, c_b).ok);
}

TEST(Homotopy, NullhomotopyRestrictsToSubsets) {
  auto h = corpus::H();
  auto big = induced_subimage(h, corpus::h_points("abcdefg"));
  auto r = is_nullhomotopic(DigitalMap::inclusion(big, h));
  ASSERT_TRUE(r.nullhomotopic);
  for (const std::string& letters : {"abc", "cdefg", "g", "bdf"}) {
    auto small = induced_subimage(h, corpus::h_points(letters));
    auto w = restricted(*r.witness, small);
    EXPECT_TRUE(verify_homotopy(w, DigitalMap::inclusion(small, h), w.stages.back()).ok) << letters;
    EXPECT_TRUE(w.stages.back().is_constant());
  }
}

TEST(Homotopy, NullhomotopyLengthMatchesOracle) {
  auto h = corpus::H();
  auto adj = oracle::matrix(*h);
  for (const std::string& letters : {"bcde", "afgh", "abc", "cdefgh"}) {
    std::vector<std::size_t> members;
    for (char c : letters) members.push_back(h->index_of(corpus::h_point(c)));
    std::sort(members.begin(), members.end());
    auto sub = induced_subimage(h, corpus::h_points(letters));
    auto r = is_nullhomotopic(DigitalMap::inclusion(sub, h));
    int d = oracle::contraction_distance(adj, members);
    ASSERT_EQ(r.nullhomotopic, d >= 0) << letters;
    if (r.nullhomotopic) EXPECT_EQ(static_cast<int>(r.witness->length()), d) << letters;
  }
}

TEST(Homotopy, Contractibility) {
  EXPECT_FALSE(is_contractible(corpus::H()).nullhomotopic);
  EXPECT_TRUE(is_contractible(corpus::cycle(4)).nullhomotopic);
  EXPECT_TRUE(is_contractible(interval_image(0, 4)).nullhomotopic);
  auto r = is_contractible(corpus::cycle(4));
  EXPECT_TRUE(verify_homotopy(*r.witness, DigitalMap::identity(corpus::cycle(4)), r.witness->stages.back()).ok);
}

TEST(Homotopy, EquivalenceToPoint) {
  auto pt = DigitalImage::make_ck({Point({0, 0})}, 1, "pt");
  EXPECT_EQ(are_homotopy_equivalent(corpus::H(), pt).verdict, Tristate::no);
  EXPECT_EQ(are_homotopy_equivalent(interval_image(0, 2), DigitalImage::make_ck({Point({0})}, 1, "p")).verdict,
            Tristate::yes);
}

TEST(Homotopy, IsomorphismChecks) {
  std::mt19937 rng(1);
  auto h = corpus::H();
  auto rl = oracle::relabel(h, rng);
  EXPECT_TRUE(is_digital_isomorphism(rl.iso).ok());
  auto shift = DigitalMap::from_function(interval_image(0, 2), interval_image(0, 2),
                                         [](const Point& p) { return Point({2 - p[0]}); });
  EXPECT_TRUE(is_digital_isomorphism(shift).ok());
  auto fold = DigitalMap::from_function(interval_image(0, 2), interval_image(0, 2),
                                        [](const Point& p) { return Point({p[0] == 2 ? 0 : p[0]}); });
  EXPECT_FALSE(is_digital_isomorphism(fold).ok());
}

TEST(Homotopy, BudgetIsEnforced) {
  EXPECT_THROW(is_contractible(corpus::H(), SearchBudget(10)), BudgetExceeded);
}
