#include <gtest/gtest.h>

#include "dtop/corpus.hpp"
#include "dtop/io.hpp"
#include "dtop/lsc_tc.hpp"

using namespace dtop;

namespace {

ImagePtr resolve(const std::string& ref) { return corpus::resolve_image(ref); }

std::size_t error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Io, ImageRoundTrip) {
  for (const auto& img : {corpus::H(), corpus::H(2), corpus::perturbed_H(), interval_image(-2, 3),
                          product_image(interval_image(0, 1), interval_image(0, 2), ProductMode::strong)}) {
    auto text = serialize_image(*img);
    auto back = parse_image(text);
    EXPECT_EQ(back->points(), img->points());
    EXPECT_EQ(back->edges(), img->edges());
    EXPECT_EQ(serialize_image(*back), text);
  }
}

TEST(Io, ParsesHandWrittenImage) {
  auto img = parse_image(
      "# the loop H\n"
      "dim 2\n"
      "adjacency c1\n"
      "point 0 -1\npoint 0 0\npoint 0 1\npoint 1 1\n"
      "point 2 1\npoint 2 0\npoint 2 -1\npoint 1 -1\n");
  EXPECT_EQ(img->size(), 8u);
  EXPECT_EQ(img->edge_count(), 8u);
  EXPECT_EQ(img->points(), corpus::H()->points());
}

TEST(Io, ExplicitEdges) {
  auto img = parse_image("dim 1\nadjacency explicit\npoint 0\npoint 5\npoint 9\nedge 0 2\n");
  EXPECT_TRUE(img->adjacent(Point({0}), Point({9})));
  EXPECT_FALSE(img->adjacent(Point({0}), Point({5})));
}

TEST(Io, LineNumberedErrors) {
  EXPECT_EQ(error_line([] { parse_image("dim 1\nadjacency c1\npoint 0\npoint 1\npoint 0\n"); }), 5u);
  EXPECT_EQ(error_line([] { parse_image("dim 2\nadjacency c1\npoint 0\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_image("dim 1\nadjacency c3\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_image("dim 1\nfrobnicate\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_image("dim 1\nadjacency c1\npoint x\n"); }), 3u);
}

TEST(Io, MapAndHomotopyRoundTrip) {
  auto h = corpus::H();
  auto w = corpus::f1(h);
  auto sub = w.front().domain();
  // The subimage goes to a temp file so the map header can name it.
  auto dir = std::filesystem::temp_directory_path() / "dtop_io_test";
  std::filesystem::create_directories(dir);
  write_file((dir / "m1.img").string(), serialize_image(*sub));
  auto res = corpus::resolver_for((dir / "x.map").string());

  auto text = serialize_map(w.stages[1], "m1.img", "corpus:H");
  auto back = parse_map(text, res);
  EXPECT_EQ(back.assignment(), w.stages[1].assignment());
  EXPECT_EQ(serialize_map(back, "m1.img", "corpus:H"), text);

  auto htext = serialize_homotopy(w, "m1.img", "corpus:H");
  auto hw = parse_homotopy(htext, res);
  ASSERT_EQ(hw.stages.size(), 4u);
  EXPECT_TRUE(verify_homotopy(hw, DigitalMap::inclusion(hw.front().domain(), hw.front().codomain()),
                              hw.stages.back())
                  .ok);
  EXPECT_EQ(serialize_homotopy(hw, "m1.img", "corpus:H"), htext);
}

TEST(Io, MapErrors) {
  EXPECT_EQ(error_line([] { parse_map("map corpus:H corpus:H\npair 0 0 -> 9 9\n", resolve); }), 2u);
  EXPECT_EQ(error_line([] { parse_map("map corpus:interval:2 corpus:interval:2\npair 0 -> 0\npair 1 -> 1\n", resolve); }),
            1u);
}

TEST(Io, GroupRoundTrip) {
  for (const auto& [t, ref] : {std::pair{corpus::h_group(), std::string("corpus:H")},
                               std::pair{corpus::zadd(-2, 2), std::string("corpus:zwindow:-2:2")}}) {
    auto text = serialize_group(t, ref);
    auto back = parse_group(text, resolve);
    EXPECT_EQ(back.products(), t.products());
    EXPECT_EQ(back.identity(), t.identity());
    EXPECT_EQ(back.window(), t.window());
    EXPECT_TRUE(verify_cayley(back).ok());
    EXPECT_EQ(serialize_group(back, ref), text);
  }
}

TEST(Io, CatWitnessRoundTripAndTamper) {
  auto h = corpus::H();
  auto r = cat(h);
  auto text = serialize_cat_witness(*r.witness, *h, "corpus:H");
  auto wf = parse_witness(text, resolve);
  auto check = verify_witness(wf);
  EXPECT_TRUE(check.ok) << check.detail;
  EXPECT_EQ(check.pieces, 2u);
  // Dropping the last piece leaves a point uncovered.
  auto cut = text.substr(0, text.rfind("piece "));
  auto pos = cut.find("pieces 2");
  ASSERT_NE(pos, std::string::npos);
  cut.replace(pos, 8, "pieces 1");
  EXPECT_FALSE(verify_witness(parse_witness(cut, resolve)).ok);
}

TEST(Io, GenusWitnessRoundTrip) {
  TcOptions o;
  o.group = corpus::h_group();
  auto t = tc_n(corpus::H(), 2, o);
  auto text = serialize_genus_witness(*t.witness, *t.fibration, "corpus:H");
  auto check = verify_witness(parse_witness(text, resolve));
  EXPECT_TRUE(check.ok) << check.detail;
  EXPECT_EQ(check.kind, "genus");
}

TEST(Io, DigestIsStable) {
  EXPECT_EQ(fnv_digest("abc"), fnv_digest("abc"));
  EXPECT_NE(fnv_digest("abc"), fnv_digest("abd"));
  EXPECT_EQ(fnv_digest("").size(), 16u);
}
