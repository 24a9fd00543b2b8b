#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dtop/error.hpp"
#include "dtop/point.hpp"

namespace dtop {

using Index = std::uint32_t;
using Edge = std::pair<Index, Index>;

class DigitalImage;
using ImagePtr = std::shared_ptr<const DigitalImage>;

enum class ProductMode { min, strong };

inline const char* to_string(ProductMode m) { return m == ProductMode::min ? "min" : "strong"; }

enum class AdjacencyKind { ck, explicit_edges, min_product, strong_product };

// Describes where an image's adjacency came from. The edge set itself is
// always materialized inside DigitalImage.
struct Adjacency {
  AdjacencyKind kind = AdjacencyKind::explicit_edges;
  int k = 0;
  ImagePtr left;
  ImagePtr right;
  std::string note;

  std::string describe() const;
};

// c_k adjacency on Z^r: p != q, between 1 and k coordinates differ by exactly
// one, all others equal.
inline bool ck_adjacent(const Point& p, const Point& q, int k) {
  if (p.dim() != q.dim()) throw Error("ck_adjacent: dimension mismatch");
  if (k < 1 || static_cast<std::size_t>(k) > p.dim()) throw Error("ck_adjacent: k out of range");
  int moved = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    int d = std::abs(p[i] - q[i]);
    if (d == 1) {
      ++moved;
    } else if (d != 0) {
      return false;
    }
  }
  return moved >= 1 && moved <= k;
}

// A finite point set in Z^r with a symmetric irreflexive adjacency relation.
// Immutable after construction; share through ImagePtr.
class DigitalImage {
 public:
  static ImagePtr make_ck(std::vector<Point> points, int k, std::string label = {});
  // Edges index into `points` as given (before canonical sorting).
  static ImagePtr make_explicit(std::vector<Point> points, const std::vector<Edge>& edges,
                                std::string label = {});
  static ImagePtr product(const ImagePtr& x, const ImagePtr& y, ProductMode mode);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(Index i) const { return points_[i]; }
  const Adjacency& adjacency() const { return adjacency_; }
  const std::string& label() const { return label_; }

  std::optional<Index> find(const Point& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Index index_of(const Point& p) const {
    auto i = find(p);
    if (!i) throw Error("point " + p.str() + " is not in image '" + label_ + "'");
    return *i;
  }
  bool contains(const Point& p) const { return index_.count(p) != 0; }

  const std::vector<Index>& neighbors(Index i) const { return neighbors_[i]; }
  bool adjacent(Index i, Index j) const {
    const auto& n = neighbors_[i];
    return std::binary_search(n.begin(), n.end(), j);
  }
  bool adjacent_or_equal(Index i, Index j) const { return i == j || adjacent(i, j); }
  bool adjacent(const Point& a, const Point& b) const { return adjacent(index_of(a), index_of(b)); }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& n : neighbors_) c += n.size();
    return c / 2;
  }
  // Edges (i, j) with i < j in canonical order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Index i = 0; i < size(); ++i)
      for (Index j : neighbors_[i])
        if (i < j) out.emplace_back(i, j);
    return out;
  }

 private:
  DigitalImage() = default;
  void set_points(std::vector<Point> points);
  void finish();

  std::vector<Point> points_;
  std::size_t dim_ = 0;
  Adjacency adjacency_;
  std::string label_;
  std::vector<std::vector<Index>> neighbors_;
  std::unordered_map<Point, Index, PointHash> index_;

  friend ImagePtr induced_subimage(const ImagePtr&, const std::vector<Point>&);
};

inline std::string Adjacency::describe() const {
  switch (kind) {
    case AdjacencyKind::ck:
      return "c" + std::to_string(k);
    case AdjacencyKind::explicit_edges:
      return note.empty() ? "explicit" : note;
    case AdjacencyKind::min_product:
      return "min(" + left->adjacency().describe() + " x " + right->adjacency().describe() + ")";
    case AdjacencyKind::strong_product:
      return "strong(" + left->adjacency().describe() + " x " + right->adjacency().describe() + ")";
  }
  return "?";
}

inline void DigitalImage::set_points(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] == points[i - 1]) throw Error("duplicate point " + points[i].str());
  dim_ = points.empty() ? 0 : points.front().dim();
  for (const auto& p : points) {
    if (p.dim() == 0) throw Error("points must have at least one coordinate");
    if (p.dim() != dim_) throw Error("points of mixed dimension");
  }
  points_ = std::move(points);
  index_.clear();
  index_.reserve(points_.size());
  for (Index i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
  neighbors_.assign(points_.size(), {});
}

inline void DigitalImage::finish() {
  for (auto& n : neighbors_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
}

inline ImagePtr DigitalImage::make_ck(std::vector<Point> points, int k, std::string label) {
  std::shared_ptr<DigitalImage> img(new DigitalImage());
  img->set_points(std::move(points));
  if (!img->empty() && (k < 1 || static_cast<std::size_t>(k) > img->dim_))
    throw Error("adjacency c" + std::to_string(k) + " out of range for dimension " +
                std::to_string(img->dim_));
  img->adjacency_.kind = AdjacencyKind::ck;
  img->adjacency_.k = k;
  img->label_ = std::move(label);
  const std::size_t n = img->size();
  const std::size_t r = img->dim_;
  bool use_offsets = n > 2048 && r <= 8;
  if (!use_offsets) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (ck_adjacent(img->points_[i], img->points_[j], k)) {
          img->neighbors_[i].push_back(j);
          img->neighbors_[j].push_back(i);
        }
  } else {
    // Offsets in {-1,0,1}^r with between 1 and k nonzero entries.
    std::size_t total = 1;
    for (std::size_t d = 0; d < r; ++d) total *= 3;
    for (Index i = 0; i < n; ++i) {
      const auto& p = img->points_[i];
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<int> c(p.coords());
        std::size_t rest = code;
        int moved = 0;
        for (std::size_t d = 0; d < r; ++d) {
          int off = static_cast<int>(rest % 3) - 1;
          rest /= 3;
          c[d] += off;
          moved += off != 0;
        }
        if (moved < 1 || moved > k) continue;
        if (auto j = img->find(Point(std::move(c)))) img->neighbors_[i].push_back(*j);
      }
    }
  }
  img->finish();
  return img;
}

inline ImagePtr DigitalImage::make_explicit(std::vector<Point> points, const std::vector<Edge>& edges,
                                            std::string label) {
  std::vector<Point> given = points;
  std::shared_ptr<DigitalImage> img(new DigitalImage());
  img->set_points(std::move(points));
  img->adjacency_.kind = AdjacencyKind::explicit_edges;
  img->label_ = std::move(label);
  for (auto [a, b] : edges) {
    if (a >= given.size() || b >= given.size())
      throw Error("edge index out of range: " + std::to_string(a) + " " + std::to_string(b));
    if (a == b) throw Error("self-loop edge at index " + std::to_string(a));
    Index i = img->index_of(given[a]);
    Index j = img->index_of(given[b]);
    img->neighbors_[i].push_back(j);
    img->neighbors_[j].push_back(i);
  }
  img->finish();
  return img;
}

// Points are concatenated coordinates; the product index of (i, j) is
// i * |y| + j, which coincides with canonical lexicographic order.
inline ImagePtr DigitalImage::product(const ImagePtr& x, const ImagePtr& y, ProductMode mode) {
  std::shared_ptr<DigitalImage> img(new DigitalImage());
  const std::size_t nx = x->size(), ny = y->size();
  img->points_.reserve(nx * ny);
  for (const auto& p : x->points())
    for (const auto& q : y->points()) img->points_.push_back(concat(p, q));
  img->dim_ = x->dim() + y->dim();
  img->index_.reserve(img->points_.size());
  for (Index i = 0; i < img->points_.size(); ++i) img->index_.emplace(img->points_[i], i);
  img->neighbors_.assign(img->points_.size(), {});
  img->adjacency_.kind = mode == ProductMode::min ? AdjacencyKind::min_product : AdjacencyKind::strong_product;
  img->adjacency_.left = x;
  img->adjacency_.right = y;
  img->label_ = (x->label().empty() ? "?" : x->label()) + "x" + (y->label().empty() ? "?" : y->label());
  for (Index i = 0; i < nx; ++i) {
    for (Index j = 0; j < ny; ++j) {
      auto& out = img->neighbors_[i * ny + j];
      for (Index i2 : x->neighbors(i)) out.push_back(static_cast<Index>(i2 * ny + j));
      for (Index j2 : y->neighbors(j)) out.push_back(static_cast<Index>(i * ny + j2));
      if (mode == ProductMode::strong)
        for (Index i2 : x->neighbors(i))
          for (Index j2 : y->neighbors(j)) out.push_back(static_cast<Index>(i2 * ny + j2));
    }
  }
  img->finish();
  return img;
}

inline ImagePtr interval_image(int lo, int hi) {
  if (lo > hi) throw Error("interval_image: lo > hi");
  std::vector<Point> pts;
  for (int v = lo; v <= hi; ++v) pts.push_back(Point{v});
  return DigitalImage::make_ck(std::move(pts), 1,
                               "[" + std::to_string(lo) + "," + std::to_string(hi) + "]");
}

inline ImagePtr product_image(const ImagePtr& x, const ImagePtr& y, ProductMode mode) {
  return DigitalImage::product(x, y, mode);
}

// Left-associated n-fold product; n = 1 returns x itself.
inline ImagePtr power_image(const ImagePtr& x, int n, ProductMode mode) {
  if (n < 1) throw Error("power_image: n must be positive");
  ImagePtr acc = x;
  for (int i = 1; i < n; ++i) acc = product_image(acc, x, mode);
  return acc;
}

inline ImagePtr induced_subimage(const ImagePtr& img, const std::vector<Point>& subset) {
  std::shared_ptr<DigitalImage> sub(new DigitalImage());
  for (const auto& p : subset)
    if (!img->contains(p)) throw Error("induced_subimage: stray point " + p.str());
  sub->set_points(subset);
  if (sub->empty()) sub->dim_ = img->dim();
  sub->label_ = img->label() + "|sub";
  if (img->adjacency().kind == AdjacencyKind::ck) {
    sub->adjacency_ = img->adjacency();
  } else {
    sub->adjacency_.kind = AdjacencyKind::explicit_edges;
    sub->adjacency_.note = "restricted " + img->adjacency().describe();
  }
  for (Index i = 0; i < sub->size(); ++i) {
    Index pi = img->index_of(sub->points_[i]);
    for (Index q : img->neighbors(pi))
      if (auto j = sub->find(img->point(q))) sub->neighbors_[i].push_back(*j);
  }
  sub->finish();
  return sub;
}

inline ImagePtr induced_subimage(const ImagePtr& img, const std::vector<Index>& subset) {
  std::vector<Point> pts;
  pts.reserve(subset.size());
  for (Index i : subset) pts.push_back(img->point(i));
  return induced_subimage(img, pts);
}

// Hop distances from `source`; unreachable vertices get -1.
inline std::vector<int> graph_distances(const DigitalImage& img, Index source) {
  std::vector<int> dist(img.size(), -1);
  std::queue<Index> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Index u = q.front();
    q.pop();
    for (Index v : img.neighbors(u))
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

// Connected-component id per point, numbered in order of first point.
inline std::vector<int> components(const DigitalImage& img) {
  std::vector<int> comp(img.size(), -1);
  int next = 0;
  for (Index s = 0; s < img.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::queue<Index> q;
    comp[s] = next;
    q.push(s);
    while (!q.empty()) {
      Index u = q.front();
      q.pop();
      for (Index v : img.neighbors(u))
        if (comp[v] < 0) {
          comp[v] = next;
          q.push(v);
        }
    }
    ++next;
  }
  return comp;
}

inline bool is_connected(const DigitalImage& img) {
  if (img.empty()) throw Error("is_connected: empty image");
  auto d = graph_distances(img, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

// Largest hop distance; throws on disconnected images.
inline int diameter(const DigitalImage& img) {
  if (!is_connected(img)) throw Error("diameter: image is not connected");
  int best = 0;
  for (Index s = 0; s < img.size(); ++s) {
    auto d = graph_distances(img, s);
    best = std::max(best, *std::max_element(d.begin(), d.end()));
  }
  return best;
}

}  // namespace dtop
