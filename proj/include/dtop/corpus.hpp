#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dtop/group.hpp"
#include "dtop/homotopy.hpp"
#include "dtop/image.hpp"
#include "dtop/io.hpp"

namespace dtop::corpus {

// The eight-point loop H with letters a..h.
inline Point h_point(char letter) {
  switch (letter) {
    case 'a': return Point({0, -1});
    case 'b': return Point({0, 0});
    case 'c': return Point({0, 1});
    case 'd': return Point({1, 1});
    case 'e': return Point({2, 1});
    case 'f': return Point({2, 0});
    case 'g': return Point({2, -1});
    case 'h': return Point({1, -1});
    default: throw Error(std::string("H has no point '") + letter + "'");
  }
}

inline std::vector<Point> h_points(const std::string& letters) {
  std::vector<Point> out;
  for (char c : letters) out.push_back(h_point(c));
  return out;
}

inline ImagePtr H(int k = 1) { return DigitalImage::make_ck(h_points("abcdefgh"), k, k == 1 ? "H" : "H-c2"); }

// H with the edge a-b removed; used to check that reproduction notices.
inline ImagePtr perturbed_H() {
  auto h = H();
  std::vector<Edge> edges;
  Index a = h->index_of(h_point('a')), b = h->index_of(h_point('b'));
  for (auto e : h->edges())
    if (!((e.first == a && e.second == b) || (e.first == b && e.second == a))) edges.push_back(e);
  return DigitalImage::make_explicit(h->points(), edges, "H-perturbed");
}

// Loop points in cyclic order starting at (0,0) and moving up first.
inline std::vector<Point> loop_order(int n) {
  if (n == 4) return {Point({0, 0}), Point({0, 1}), Point({1, 1}), Point({1, 0})};
  if (n < 8 || n % 2) throw Error("cycle:N needs N = 4 or an even N >= 8");
  const int w = (n - 4) / 2;
  std::vector<Point> out{Point({0, 0})};
  for (int x = 0; x <= w; ++x) out.push_back(Point({x, 1}));
  out.push_back(Point({w, 0}));
  for (int x = w; x >= 0; --x) out.push_back(Point({x, -1}));
  return out;
}

inline ImagePtr cycle(int n) { return DigitalImage::make_ck(loop_order(n), 1, "cycle:" + std::to_string(n)); }

inline ImagePtr pm1() { return DigitalImage::make_ck({Point({-1}), Point({1})}, 1, "{-1,1}"); }

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char c : s) {
    if (c == sep)
      out.emplace_back();
    else
      out.back() += c;
  }
  return out;
}

inline int arg(const std::vector<std::string>& parts, std::size_t i, const std::string& name) {
  if (i >= parts.size()) throw Error("corpus:" + name + " is missing an argument");
  try {
    std::size_t used = 0;
    int v = std::stoi(parts[i], &used);
    if (used == parts[i].size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("corpus:" + name + ": bad argument '" + parts[i] + "'");
}

}  // namespace detail

inline ImagePtr image(const std::string& name) {
  auto parts = detail::split(name, ':');
  const auto& head = parts[0];
  if (name == "H") return H(1);
  if (name == "H-c2") return H(2);
  if (name == "H-perturbed") return perturbed_H();
  if (name == "pm1") return pm1();
  if (name == "e2") return interval_image(8, 9);
  if (head == "interval") {
    if (parts.size() == 2) return interval_image(0, detail::arg(parts, 1, name));
    return interval_image(detail::arg(parts, 1, name), detail::arg(parts, 2, name));
  }
  if (head == "cycle") return cycle(detail::arg(parts, 1, name));
  if (head == "zwindow") return interval_image(detail::arg(parts, 1, name), detail::arg(parts, 2, name));
  if (head == "z2window") {
    auto z = interval_image(detail::arg(parts, 1, name), detail::arg(parts, 2, name));
    return product_image(z, z, ProductMode::min);
  }
  throw Error("unknown corpus image '" + name + "'");
}

// Rows a..h of the operation on H, columns a..h.
inline const char* const h_rows[8] = {
    "habcdefg", "abcdefgh", "bcdefgha", "cdefghab", "defghabc", "efghabcd", "fghabcde", "ghabcdef",
};

inline CayleyTable h_group(const ImagePtr& carrier = H()) {
  const std::string letters = "abcdefgh";
  return CayleyTable::from_operation(carrier, h_point('b'), [&](const Point& x, const Point& y) -> std::optional<Point> {
    std::size_t r = 0, c = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      if (h_point(letters[i]) == x) r = i;
      if (h_point(letters[i]) == y) c = i;
    }
    return h_point(h_rows[r][c]);
  });
}

inline CayleyTable cyclic(int n) {
  auto order = loop_order(n);
  auto carrier = cycle(n);
  auto pos = [&](const Point& p) {
    return static_cast<int>(std::find(order.begin(), order.end(), p) - order.begin());
  };
  return CayleyTable::from_operation(carrier, order[0], [&](const Point& x, const Point& y) -> std::optional<Point> {
    return order[static_cast<std::size_t>((pos(x) + pos(y)) % n)];
  });
}

inline CayleyTable pm1_group() {
  return CayleyTable::from_operation(pm1(), Point({1}), [](const Point& x, const Point& y) -> std::optional<Point> {
    return Point({x.coords()[0] * y.coords()[0]});
  });
}

// [8,9] with identity 8.
inline CayleyTable e2_group() {
  return CayleyTable::from_operation(interval_image(8, 9), Point({8}),
                                     [](const Point& x, const Point& y) -> std::optional<Point> {
                                       return Point({8 + (x.coords()[0] - 8 + y.coords()[0] - 8) % 2});
                                     });
}

inline CayleyTable zadd(int lo, int hi) {
  return CayleyTable::from_operation(interval_image(lo, hi), Point({0}),
                                     [](const Point& x, const Point& y) -> std::optional<Point> {
                                       return Point({x.coords()[0] + y.coords()[0]});
                                     },
                                     true);
}

inline CayleyTable zmul(int lo, int hi) {
  return CayleyTable::from_operation(interval_image(lo, hi), Point({1}),
                                     [](const Point& x, const Point& y) -> std::optional<Point> {
                                       return Point({x.coords()[0] * y.coords()[0]});
                                     },
                                     true);
}

inline CayleyTable group(const std::string& name) {
  auto parts = detail::split(name, ':');
  const auto& head = parts[0];
  if (name == "hgroup") return h_group();
  if (name == "pm1") return pm1_group();
  if (name == "e2") return e2_group();
  if (head == "cyclic") return cyclic(detail::arg(parts, 1, name));
  if (head == "zadd") return zadd(detail::arg(parts, 1, name), detail::arg(parts, 2, name));
  if (head == "z2add") {
    auto z = zadd(detail::arg(parts, 1, name), detail::arg(parts, 2, name));
    return product_group(z, z);
  }
  if (head == "zmul") return zmul(detail::arg(parts, 1, name), detail::arg(parts, 2, name));
  throw Error("unknown corpus group '" + name + "'");
}

// The group that usually accompanies a corpus image, if any.
inline std::optional<std::string> default_group(const std::string& image_name) {
  if (image_name == "H") return "hgroup";
  if (image_name == "e2" || image_name == "pm1") return image_name;
  auto parts = detail::split(image_name, ':');
  if (parts[0] == "cycle" && parts.size() == 2) return "cyclic:" + parts[1];
  return std::nullopt;
}

// Stage maps on a subset of H given by letters: stages[s][i] is the image of
// members[i] at time s.
inline HomotopyWitness letter_homotopy(const std::string& members, const std::vector<std::string>& stages,
                                       const ImagePtr& h = H()) {
  auto sub = induced_subimage(h, h_points(members));
  HomotopyWitness w;
  for (const auto& st : stages)
    w.stages.push_back(DigitalMap::from_function(sub, h, [&](const Point& p) {
      for (std::size_t i = 0; i < members.size(); ++i)
        if (h_point(members[i]) == p) return h_point(st[i]);
      throw Error("letter_homotopy: stray point");
    }));
  return w;
}

// The two contractions covering H: M1 = {b,c,d,e} to e and M2 = {a,f,g,h} to a.
inline HomotopyWitness f1(const ImagePtr& h = H()) { return letter_homotopy("bcde", {"bcde", "ccde", "ddde", "eeee"}, h); }
inline HomotopyWitness f2(const ImagePtr& h = H()) { return letter_homotopy("afgh", {"afgh", "aggh", "ahhh", "aaaa"}, h); }

constexpr const char* prefix = "corpus:";

inline bool is_corpus_ref(const std::string& ref) { return ref.rfind(prefix, 0) == 0; }

// "corpus:<name>", optionally followed by "^n" for the n-fold minimal
// product, or a file path.
inline ImagePtr resolve_image(const std::string& ref) {
  std::string body = ref;
  int power = 1;
  if (auto caret = ref.rfind('^'); caret != std::string::npos) {
    body = ref.substr(0, caret);
    try {
      power = std::stoi(ref.substr(caret + 1));
    } catch (const std::exception&) {
      throw Error("bad power in image reference '" + ref + "'");
    }
    if (power < 1) throw Error("bad power in image reference '" + ref + "'");
  }
  ImagePtr img = is_corpus_ref(body) ? image(body.substr(std::char_traits<char>::length(prefix)))
                                     : parse_image(read_file(body));
  return power == 1 ? img : power_image(img, power, ProductMode::min);
}

// File references inside a file are resolved relative to that file.
inline ImageResolver resolver_for(const std::string& file) {
  auto dir = std::filesystem::path(file).parent_path();
  return [dir](const std::string& ref) {
    if (is_corpus_ref(ref) || std::filesystem::path(ref).is_absolute() || dir.empty()) return resolve_image(ref);
    return resolve_image((dir / ref).string());
  };
}

inline CayleyTable resolve_group(const std::string& ref) {
  if (is_corpus_ref(ref)) return group(ref.substr(std::char_traits<char>::length(prefix)));
  return parse_group(read_file(ref), resolver_for(ref));
}

// Text whose digest identifies a reference in reports.
inline std::string canonical_text(const std::string& ref) {
  if (is_corpus_ref(ref)) return serialize_image(*resolve_image(ref));
  return read_file(ref.substr(0, ref.rfind('^')));
}

}  // namespace dtop::corpus
