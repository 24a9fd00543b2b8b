#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "dtop/group.hpp"
#include "dtop/homotopy.hpp"
#include "dtop/lsc_tc.hpp"
#include "dtop/paths.hpp"

namespace dtop {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using ImageResolver = std::function<ImagePtr(const std::string&)>;

inline std::string fnv_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Comments run from '#' to end of line. ':', '|' and ';' are separate
// tokens except inside words with letters, such as "corpus:H".
inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  auto is_sep = [](char c) { return c == ':' || c == '|' || c == ';'; };
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line l{number, {}};
    for (std::string word; ls >> word;) {
      if (std::any_of(word.begin(), word.end(), [](unsigned char c) { return std::isalpha(c); })) {
        l.tokens.push_back(word);
        continue;
      }
      std::string cur;
      for (char c : word) {
        if (!is_sep(c)) {
          cur += c;
          continue;
        }
        if (!cur.empty()) l.tokens.push_back(cur);
        cur.clear();
        l.tokens.emplace_back(1, c);
      }
      if (!cur.empty()) l.tokens.push_back(cur);
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

inline int to_int(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError(line, "bad integer '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line, "bad integer '" + s + "'");
  }
}

inline Point to_point(const std::vector<std::string>& toks, std::size_t from, std::size_t to, std::size_t line) {
  if (to <= from) throw ParseError(line, "missing coordinates");
  std::vector<int> c;
  for (std::size_t i = from; i < to; ++i) c.push_back(to_int(toks[i], line));
  return Point(std::move(c));
}

inline std::string coords(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p.coords()[i]);
  }
  return s;
}

inline void expect(const Line& l, const std::string& keyword, std::size_t min_tokens = 1) {
  if (l.tokens[0] != keyword) throw ParseError(l.number, "expected '" + keyword + "', found '" + l.tokens[0] + "'");
  if (l.tokens.size() < min_tokens) throw ParseError(l.number, "'" + keyword + "' line is too short");
}

inline std::size_t find_token(const Line& l, const std::string& tok, std::size_t from = 0) {
  for (std::size_t i = from; i < l.tokens.size(); ++i)
    if (l.tokens[i] == tok) return i;
  throw ParseError(l.number, "missing '" + tok + "'");
}

inline Index lookup(const DigitalImage& img, const Point& p, std::size_t line) {
  auto i = img.find(p);
  if (!i) throw ParseError(line, "point " + p.str() + " is not in image " + img.label());
  return *i;
}

}  // namespace detail

// ---- images ----

inline std::string serialize_image(const DigitalImage& img) {
  std::ostringstream out;
  if (!img.label().empty()) out << "label " << img.label() << "\n";
  out << "dim " << img.dim() << "\n";
  const bool ck = img.adjacency().kind == AdjacencyKind::ck;
  out << "adjacency " << (ck ? "c" + std::to_string(img.adjacency().k) : std::string("explicit")) << "\n";
  for (const auto& p : img.points()) out << "point " << detail::coords(p) << "\n";
  if (!ck)
    for (auto [i, j] : img.edges()) out << "edge " << i << " " << j << "\n";
  return out.str();
}

inline ImagePtr parse_image(const std::string& text) {
  std::string label;
  std::optional<std::size_t> dim;
  std::optional<int> k;
  bool explicit_edges = false, have_adjacency = false;
  std::size_t adjacency_line = 0;
  std::vector<Point> points;
  std::vector<std::size_t> point_lines;
  std::vector<std::pair<Edge, std::size_t>> edges;
  for (const auto& l : detail::tokenize(text)) {
    const auto& kw = l.tokens[0];
    if (kw == "label") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) label += (i > 1 ? " " : "") + l.tokens[i];
    } else if (kw == "dim") {
      if (l.tokens.size() != 2) throw ParseError(l.number, "dim takes one integer");
      int d = detail::to_int(l.tokens[1], l.number);
      if (d < 1) throw ParseError(l.number, "dim must be positive");
      dim = static_cast<std::size_t>(d);
    } else if (kw == "adjacency") {
      if (l.tokens.size() != 2) throw ParseError(l.number, "adjacency takes one argument");
      have_adjacency = true;
      adjacency_line = l.number;
      if (l.tokens[1] == "explicit") {
        explicit_edges = true;
      } else if (l.tokens[1].size() > 1 && l.tokens[1][0] == 'c') {
        k = detail::to_int(l.tokens[1].substr(1), l.number);
        if (*k < 1) throw ParseError(l.number, "c<k> needs k >= 1");
      } else {
        throw ParseError(l.number, "unknown adjacency '" + l.tokens[1] + "'");
      }
    } else if (kw == "point") {
      Point p = detail::to_point(l.tokens, 1, l.tokens.size(), l.number);
      if (dim && p.dim() != *dim) throw ParseError(l.number, "point has wrong dimension");
      for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == p)
          throw ParseError(l.number, "duplicate point " + p.str() + " (first on line " +
                                         std::to_string(point_lines[i]) + ")");
      points.push_back(std::move(p));
      point_lines.push_back(l.number);
    } else if (kw == "edge") {
      if (l.tokens.size() != 3) throw ParseError(l.number, "edge takes two indices");
      int a = detail::to_int(l.tokens[1], l.number), b = detail::to_int(l.tokens[2], l.number);
      if (a < 0 || b < 0) throw ParseError(l.number, "negative edge index");
      edges.push_back({{static_cast<Index>(a), static_cast<Index>(b)}, l.number});
    } else {
      throw ParseError(l.number, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_adjacency) throw ParseError(0, "missing adjacency line");
  if (!explicit_edges && !edges.empty()) throw ParseError(edges.front().second, "edge lines need adjacency explicit");
  if (explicit_edges) {
    std::vector<Edge> e;
    for (auto& [edge, line] : edges) {
      if (edge.first >= points.size() || edge.second >= points.size())
        throw ParseError(line, "edge index out of range");
      if (edge.first == edge.second) throw ParseError(line, "self-loop edge");
      e.push_back(edge);
    }
    return DigitalImage::make_explicit(std::move(points), e, label);
  }
  std::size_t d = dim ? *dim : (points.empty() ? 0 : points.front().dim());
  if (d && static_cast<std::size_t>(*k) > d)
    throw ParseError(adjacency_line, "c" + std::to_string(*k) + " exceeds the dimension");
  return DigitalImage::make_ck(std::move(points), *k, label);
}

// ---- maps and homotopies ----

inline std::string serialize_map(const DigitalMap& f, const std::string& dom_ref, const std::string& cod_ref) {
  std::ostringstream out;
  out << "map " << dom_ref << " " << cod_ref << "\n";
  for (Index i = 0; i < f.domain()->size(); ++i)
    out << "pair " << detail::coords(f.domain()->point(i)) << " -> " << detail::coords(f.codomain()->point(f(i)))
        << "\n";
  return out.str();
}

namespace detail {

inline DigitalMap parse_map_lines(const std::vector<Line>& lines, std::size_t& pos, const ImageResolver& resolve) {
  const Line& head = lines.at(pos);
  expect(head, "map", 3);
  if (head.tokens.size() != 3) throw ParseError(head.number, "map takes a domain and a codomain reference");
  auto dom = resolve(head.tokens[1]);
  auto cod = resolve(head.tokens[2]);
  std::vector<std::optional<Index>> a(dom->size());
  ++pos;
  for (; pos < lines.size() && lines[pos].tokens[0] == "pair"; ++pos) {
    const Line& l = lines[pos];
    std::size_t arrow = find_token(l, "->");
    Point x = to_point(l.tokens, 1, arrow, l.number);
    Point y = to_point(l.tokens, arrow + 1, l.tokens.size(), l.number);
    Index i = lookup(*dom, x, l.number);
    if (a[i]) throw ParseError(l.number, "point " + x.str() + " assigned twice");
    a[i] = lookup(*cod, y, l.number);
  }
  std::vector<Index> values;
  for (Index i = 0; i < a.size(); ++i) {
    if (!a[i]) throw ParseError(head.number, "map leaves " + dom->point(i).str() + " unassigned");
    values.push_back(*a[i]);
  }
  return DigitalMap(dom, cod, std::move(values));
}

}  // namespace detail

inline DigitalMap parse_map(const std::string& text, const ImageResolver& resolve) {
  auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty map file");
  std::size_t pos = 0;
  auto f = detail::parse_map_lines(lines, pos, resolve);
  if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected '" + lines[pos].tokens[0] + "'");
  return f;
}

inline std::string serialize_homotopy(const HomotopyWitness& w, const std::string& dom_ref,
                                      const std::string& cod_ref) {
  std::string out = "stages " + std::to_string(w.stages.size()) + "\n";
  for (const auto& s : w.stages) out += serialize_map(s, dom_ref, cod_ref);
  return out;
}

inline HomotopyWitness parse_homotopy(const std::string& text, const ImageResolver& resolve) {
  auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty homotopy file");
  detail::expect(lines[0], "stages", 2);
  int count = detail::to_int(lines[0].tokens[1], lines[0].number);
  if (count < 1) throw ParseError(lines[0].number, "a homotopy needs at least one stage");
  HomotopyWitness w;
  std::size_t pos = 1;
  for (int s = 0; s < count; ++s) {
    if (pos >= lines.size()) throw ParseError(lines.back().number, "expected " + std::to_string(count) + " stages");
    w.stages.push_back(detail::parse_map_lines(lines, pos, resolve));
    const auto& first = w.stages.front();
    const auto& cur = w.stages.back();
    if (cur.domain()->points() != first.domain()->points() || cur.codomain()->points() != first.codomain()->points())
      throw ParseError(lines[pos - 1].number, "stage images differ from the first stage");
  }
  if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected '" + lines[pos].tokens[0] + "'");
  return w;
}

// ---- groups ----

inline std::string serialize_group(const CayleyTable& t, const std::string& carrier_ref) {
  std::ostringstream out;
  const auto& c = *t.carrier();
  out << "group " << carrier_ref << "\n";
  if (t.window()) out << "window\n";
  out << "identity " << detail::coords(c.point(t.identity())) << "\n";
  for (Index a = 0; a < c.size(); ++a) {
    out << "row " << detail::coords(c.point(a)) << " :";
    for (Index b = 0; b < c.size(); ++b) {
      auto v = t.multiply(a, b);
      out << " " << (v ? detail::coords(c.point(*v)) : std::string("*"));
      if (b + 1 < c.size()) out << " |";
    }
    out << "\n";
  }
  return out.str();
}

// Rows list products against the carrier points in canonical order,
// separated by '|'; '*' marks an undefined product (window tables only).
inline CayleyTable parse_group(const std::string& text, const ImageResolver& resolve) {
  auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty group file");
  detail::expect(lines[0], "group", 2);
  auto carrier = resolve(lines[0].tokens[1]);
  const std::size_t n = carrier->size();
  bool window = false;
  std::optional<Index> identity;
  std::vector<std::int32_t> table(n * n, CayleyTable::undefined);
  std::vector<char> row_seen(n, 0);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& l = lines[li];
    if (l.tokens[0] == "window") {
      window = true;
    } else if (l.tokens[0] == "identity") {
      identity = detail::lookup(*carrier, detail::to_point(l.tokens, 1, l.tokens.size(), l.number), l.number);
    } else if (l.tokens[0] == "row") {
      std::size_t colon = detail::find_token(l, ":");
      Index a = detail::lookup(*carrier, detail::to_point(l.tokens, 1, colon, l.number), l.number);
      if (row_seen[a]) throw ParseError(l.number, "duplicate row");
      row_seen[a] = 1;
      std::vector<std::vector<std::string>> cells(1);
      for (std::size_t i = colon + 1; i < l.tokens.size(); ++i) {
        if (l.tokens[i] == "|")
          cells.emplace_back();
        else
          cells.back().push_back(l.tokens[i]);
      }
      if (cells.size() != n) throw ParseError(l.number, "row needs " + std::to_string(n) + " entries");
      for (Index b = 0; b < n; ++b) {
        if (cells[b].size() == 1 && cells[b][0] == "*") continue;
        auto p = detail::to_point(cells[b], 0, cells[b].size(), l.number);
        table[a * n + b] = static_cast<std::int32_t>(detail::lookup(*carrier, p, l.number));
      }
    } else {
      throw ParseError(l.number, "unknown keyword '" + l.tokens[0] + "'");
    }
  }
  if (!identity) throw ParseError(lines[0].number, "missing identity line");
  for (Index a = 0; a < n; ++a)
    if (!row_seen[a]) throw ParseError(lines.back().number, "missing row for " + carrier->point(a).str());
  if (!window)
    for (auto v : table)
      if (v == CayleyTable::undefined) throw ParseError(lines[0].number, "'*' entries need a window line");
  return CayleyTable(carrier, std::move(table), *identity, window);
}

// ---- cover witnesses ----

// A cat witness lists each piece with the time track of every member; a
// genus witness lists each piece with the arm paths over every base point.
struct WitnessFile {
  std::string kind;
  std::string base_ref;
  ImagePtr base;
  std::optional<CoverWitness<HomotopyWitness>> cat;
  std::shared_ptr<const EndpointFibration> fibration;
  std::optional<TcCover> genus;
};

inline std::string serialize_cat_witness(const CoverWitness<HomotopyWitness>& w, const DigitalImage& base,
                                         const std::string& base_ref) {
  std::ostringstream out;
  out << "witness cat\nbase " << base_ref << "\npieces " << w.pieces.size() << "\n";
  for (std::size_t i = 0; i < w.pieces.size(); ++i) {
    const auto& h = w.certificates[i];
    out << "piece " << w.pieces[i].size() << " stages " << h.stages.size() << "\n";
    for (std::size_t k = 0; k < w.pieces[i].size(); ++k) {
      out << "track " << detail::coords(base.point(w.pieces[i][k])) << " :";
      for (std::size_t s = 0; s < h.stages.size(); ++s)
        out << (s ? " | " : " ") << detail::coords(base.point(h.stages[s](static_cast<Index>(k))));
      out << "\n";
    }
  }
  return out.str();
}

inline std::string serialize_genus_witness(const TcCover& w, const EndpointFibration& fib,
                                           const std::string& space_ref) {
  std::ostringstream out;
  const auto& x = *fib.space();
  out << "witness genus\nbase " << space_ref << "\nfibration arms " << fib.arms() << " length " << fib.length()
      << " mode " << to_string(fib.mode()) << "\npieces " << w.pieces.size() << "\n";
  for (const auto& s : w.certificates) {
    out << "piece " << s.piece.size() << "\n";
    for (std::size_t k = 0; k < s.piece.size(); ++k) {
      out << "section " << detail::coords(fib.base()->point(s.piece[k])) << " :";
      for (int j = 0; j < fib.arms(); ++j) {
        if (j) out << " ;";
        for (int t = 0; t <= fib.length(); ++t)
          out << (t ? " | " : " ") << detail::coords(x.point(fib.at(s.values[k], j, t)));
      }
      out << "\n";
    }
  }
  return out.str();
}

namespace detail {

inline std::vector<std::vector<std::string>> split_on(const std::vector<std::string>& toks, std::size_t from,
                                                      const std::string& sep) {
  std::vector<std::vector<std::string>> out(1);
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (toks[i] == sep)
      out.emplace_back();
    else
      out.back().push_back(toks[i]);
  }
  return out;
}

}  // namespace detail

inline WitnessFile parse_witness(const std::string& text, const ImageResolver& resolve) {
  auto lines = detail::tokenize(text);
  if (lines.size() < 3) throw ParseError(lines.empty() ? 0 : lines.back().number, "truncated witness file");
  detail::expect(lines[0], "witness", 2);
  WitnessFile wf;
  wf.kind = lines[0].tokens[1];
  if (wf.kind != "cat" && wf.kind != "genus") throw ParseError(lines[0].number, "unknown witness kind");
  detail::expect(lines[1], "base", 2);
  wf.base_ref = lines[1].tokens[1];
  wf.base = resolve(wf.base_ref);
  std::size_t pos = 2;
  if (wf.kind == "genus") {
    const auto& l = lines[pos++];
    detail::expect(l, "fibration", 7);
    if (l.tokens[1] != "arms" || l.tokens[3] != "length" || l.tokens[5] != "mode")
      throw ParseError(l.number, "expected 'fibration arms <n> length <m> mode <mode>'");
    FunctionSpaceMode mode;
    if (l.tokens[6] == "pointwise")
      mode = FunctionSpaceMode::pointwise;
    else if (l.tokens[6] == "strong")
      mode = FunctionSpaceMode::strong;
    else
      throw ParseError(l.number, "unknown mode '" + l.tokens[6] + "'");
    wf.fibration = std::make_shared<const EndpointFibration>(wf.base, detail::to_int(l.tokens[2], l.number),
                                                             detail::to_int(l.tokens[4], l.number), mode);
  }
  if (pos >= lines.size()) throw ParseError(lines.back().number, "missing pieces line");
  detail::expect(lines[pos], "pieces", 2);
  const int count = detail::to_int(lines[pos].tokens[1], lines[pos].number);
  ++pos;
  auto next = [&]() -> const detail::Line& {
    if (pos >= lines.size()) throw ParseError(lines.back().number, "witness file ends early");
    return lines[pos++];
  };
  if (wf.kind == "cat") {
    CoverWitness<HomotopyWitness> cover{"cat", {}, {}};
    for (int p = 0; p < count; ++p) {
      const auto& head = next();
      detail::expect(head, "piece", 4);
      int size = detail::to_int(head.tokens[1], head.number);
      int stages = detail::to_int(head.tokens[3], head.number);
      if (size < 1 || stages < 1) throw ParseError(head.number, "piece needs members and stages");
      std::vector<std::pair<Index, std::vector<Index>>> tracks;
      for (int k = 0; k < size; ++k) {
        const auto& l = next();
        detail::expect(l, "track", 2);
        std::size_t colon = detail::find_token(l, ":");
        Index member = detail::lookup(*wf.base, detail::to_point(l.tokens, 1, colon, l.number), l.number);
        auto cells = detail::split_on(l.tokens, colon + 1, "|");
        if (cells.size() != static_cast<std::size_t>(stages)) throw ParseError(l.number, "track has wrong length");
        std::vector<Index> track;
        for (const auto& c : cells)
          track.push_back(detail::lookup(*wf.base, detail::to_point(c, 0, c.size(), l.number), l.number));
        tracks.emplace_back(member, std::move(track));
      }
      std::sort(tracks.begin(), tracks.end());
      std::vector<Index> piece;
      for (const auto& t : tracks) piece.push_back(t.first);
      if (std::adjacent_find(piece.begin(), piece.end()) != piece.end())
        throw ParseError(head.number, "duplicate member in piece");
      auto sub = induced_subimage(wf.base, piece);
      HomotopyWitness h;
      for (int s = 0; s < stages; ++s) {
        std::vector<Index> a;
        for (const auto& t : tracks) a.push_back(t.second[static_cast<std::size_t>(s)]);
        h.stages.emplace_back(sub, wf.base, std::move(a));
      }
      cover.pieces.push_back(std::move(piece));
      cover.certificates.push_back(std::move(h));
    }
    wf.cat = std::move(cover);
  } else {
    const auto& fib = *wf.fibration;
    const auto& x = *fib.space();
    TcCover cover{"genus", {}, {}};
    for (int p = 0; p < count; ++p) {
      const auto& head = next();
      detail::expect(head, "piece", 2);
      int size = detail::to_int(head.tokens[1], head.number);
      std::vector<std::pair<Index, EndpointFibration::Element>> entries;
      for (int k = 0; k < size; ++k) {
        const auto& l = next();
        detail::expect(l, "section", 2);
        std::size_t colon = detail::find_token(l, ":");
        Index v = detail::lookup(*fib.base(), detail::to_point(l.tokens, 1, colon, l.number), l.number);
        auto arms = detail::split_on(l.tokens, colon + 1, ";");
        if (arms.size() != static_cast<std::size_t>(fib.arms())) throw ParseError(l.number, "wrong number of arms");
        EndpointFibration::Element e;
        for (const auto& arm : arms) {
          auto cells = detail::split_on(arm, 0, "|");
          if (cells.size() != static_cast<std::size_t>(fib.length()) + 1)
            throw ParseError(l.number, "arm has wrong length");
          for (const auto& c : cells) e.push_back(detail::lookup(x, detail::to_point(c, 0, c.size(), l.number), l.number));
        }
        entries.emplace_back(v, std::move(e));
      }
      std::sort(entries.begin(), entries.end());
      TcSection s;
      for (auto& [v, e] : entries) {
        s.piece.push_back(v);
        s.values.push_back(std::move(e));
      }
      if (std::adjacent_find(s.piece.begin(), s.piece.end()) != s.piece.end())
        throw ParseError(head.number, "duplicate base point in piece");
      cover.pieces.push_back(s.piece);
      cover.certificates.push_back(std::move(s));
    }
    wf.genus = std::move(cover);
  }
  if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected '" + lines[pos].tokens[0] + "'");
  return wf;
}

struct WitnessCheck {
  bool ok = false;
  std::string kind;
  std::size_t pieces = 0;
  std::string detail;
};

// Independent re-verification: coverage plus every certificate.
inline WitnessCheck verify_witness(const WitnessFile& wf) {
  WitnessCheck c;
  c.kind = wf.kind;
  if (wf.cat) {
    c.pieces = wf.cat->pieces.size();
    c.ok = verify_cover(NullhomotopyOracle(wf.base), *wf.cat);
  } else if (wf.genus) {
    c.pieces = wf.genus->pieces.size();
    c.ok = verify_tc_cover(*wf.fibration, *wf.genus);
    if (!c.ok) {
      for (const auto& s : wf.genus->certificates)
        if (auto r = verify_section(s, *wf.fibration); !r) {
          c.detail = r.failure;
          break;
        }
      if (c.detail.empty()) c.detail = "pieces do not cover the base";
    }
  }
  if (!c.ok && c.detail.empty()) c.detail = "cover does not verify";
  return c;
}

}  // namespace dtop
