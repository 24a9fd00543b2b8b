#include <gtest/gtest.h>

#include <random>

#include "dtop/corpus.hpp"
#include "dtop/lsc_tc.hpp"
#include "oracles.hpp"

using namespace dtop;

namespace {

// Contractibility of a subset inside the image, decided by the brute-force
// map-graph oracle.
struct SubsetOracle {
  oracle::Matrix adj;
  std::map<std::uint32_t, bool> memo;
  bool operator()(std::uint32_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < adj.size(); ++i)
      if (mask >> i & 1u) members.push_back(i);
    bool ok = oracle::contraction_distance(adj, members) >= 0;
    return memo[mask] = ok;
  }
};

}  // namespace

TEST(Cover, CatOfHIsTwoWithVerifiedCover) {
  auto h = corpus::H();
  auto r = cat(h, CoverMode::exact);
  ASSERT_TRUE(r.exact());
  EXPECT_EQ(r.bounds.lower, 2);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->pieces.size(), 2u);
  EXPECT_TRUE(verify_cover(NullhomotopyOracle(h), *r.witness));
}

TEST(Cover, MaximalSetsOfHAreSevenPointComplements) {
  auto h = corpus::H();
  NullhomotopyOracle o(h);
  std::vector<Index> all(8);
  for (Index i = 0; i < 8; ++i) all[i] = i;
  SearchBudget b;
  EXPECT_EQ(o.certify(all, b).verdict, Verdict::no);
  for (Index skip = 0; skip < 8; ++skip) {
    std::vector<Index> s;
    for (Index i = 0; i < 8; ++i)
      if (i != skip) s.push_back(i);
    SearchBudget bb;
    auto a = o.certify(s, bb);
    ASSERT_EQ(a.verdict, Verdict::yes);
    EXPECT_TRUE(o.verify(s, *a.certificate));
  }
}

TEST(Cover, ExamplePiecesAreAdmissible) {
  auto h = corpus::H();
  NullhomotopyOracle o(h);
  for (const std::string& letters : {"bcde", "afgh"}) {
    std::vector<Index> s;
    for (char c : letters) s.push_back(h->index_of(corpus::h_point(c)));
    std::sort(s.begin(), s.end());
    SearchBudget b;
    auto a = o.certify(s, b);
    ASSERT_EQ(a.verdict, Verdict::yes);
    EXPECT_TRUE(o.verify(s, *a.certificate));
  }
}

TEST(Cover, FourCycleIsContractible) {
  // The 4-point loop collapses: a single piece suffices.
  auto c4 = corpus::cycle(4);
  SubsetOracle so{oracle::matrix(*c4), {}};
  EXPECT_EQ(oracle::min_cover(4, so), 1);
  auto r = cat(c4);
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(r.bounds.lower, 1);
}

TEST(Cover, ExactMatchesBruteForceOnSmallImages) {
  std::mt19937 rng(8);
  std::vector<ImagePtr> cases{corpus::cycle(4), interval_image(0, 3)};
  for (int i = 0; i < 12; ++i) cases.push_back(oracle::random_grid_image(rng, 6, 3, 1 + i % 2));
  for (const auto& img : cases) {
    SubsetOracle so{oracle::matrix(*img), {}};
    int want = oracle::min_cover(img->size(), so);
    auto r = cat(img);
    ASSERT_TRUE(r.exact());
    EXPECT_EQ(r.bounds.lower, want) << serialize_image(*img);
    EXPECT_TRUE(verify_cover(NullhomotopyOracle(img), *r.witness));
  }
}

TEST(Cover, BoundsSandwichExact) {
  std::mt19937 rng(12);
  std::vector<ImagePtr> cases{corpus::H(), corpus::cycle(8), corpus::cycle(4)};
  for (int i = 0; i < 10; ++i) cases.push_back(oracle::random_grid_image(rng, 9, 4, 1 + i % 2));
  for (const auto& img : cases) {
    auto e = cat(img);
    auto b = cat(img, CoverMode::bounds);
    ASSERT_TRUE(e.exact());
    EXPECT_LE(b.bounds.lower, e.bounds.lower);
    if (b.bounds.upper) EXPECT_GE(*b.bounds.upper, e.bounds.lower);
    if (b.witness) EXPECT_TRUE(verify_cover(NullhomotopyOracle(img), *b.witness));
  }
}

TEST(Cover, TinyBudgetStillGivesLowerBoundTwo) {
  CoverOptions o;
  o.call_budget = 20000;
  auto r = cat(corpus::H(), CoverMode::bounds, o);
  EXPECT_EQ(r.bounds.lower, 2);
  if (r.bounds.upper) EXPECT_EQ(*r.bounds.upper, 2);
}

TEST(Cover, InvariantUnderRelabeling) {
  std::mt19937 rng(4);
  for (int i = 0; i < 5; ++i) {
    auto rl = oracle::relabel(corpus::H(), rng);
    ASSERT_TRUE(is_digital_isomorphism(rl.iso).ok());
    auto r = cat(rl.image);
    EXPECT_EQ(r.bounds.str(), "2");
  }
}

TEST(Cover, GuardStopsExactMode) {
  EXPECT_THROW(cat(corpus::cycle(16)), BudgetExceeded);
}
