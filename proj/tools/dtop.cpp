#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dtop/corpus.hpp"
#include "dtop/io.hpp"
#include "dtop/lsc_tc.hpp"
#include "dtop/report.hpp"
#include "dtop/reproduction.hpp"

using namespace dtop;
using nlohmann::json;

namespace {

constexpr int exit_computed = 0;
constexpr int exit_error = 1;
constexpr int exit_negative = 2;

constexpr const char* cat_convention = "k sets: a contractible image has cat 1";

struct Common {
  bool json_out = false;
  bool timing = false;
  std::string out;
  std::string witness;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json_out, "Print the report as JSON");
  cmd->add_flag("--timing", c.timing, "Include wall time in the report");
  cmd->add_option("--out", c.out, "Write the report to a file instead of stdout");
}

void add_witness(CLI::App* cmd, Common& c) {
  cmd->add_option("--witness", c.witness, "Write the witness to a file");
}

std::uint64_t parse_budget(const std::string& s) {
  if (s == "tiny") return 20'000;
  if (s == "small") return 50'000;
  if (s == "default") return 200'000;
  if (s == "large") return 2'000'000;
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used == s.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error("bad budget '" + s + "' (tiny, small, default, large or a positive step count)");
}

FunctionSpaceMode parse_mode(const std::string& s) {
  if (s == "pointwise") return FunctionSpaceMode::pointwise;
  if (s == "strong") return FunctionSpaceMode::strong;
  throw Error("bad mode '" + s + "' (pointwise or strong)");
}

std::string image_digest(const std::string& ref) { return fnv_digest(corpus::canonical_text(ref)); }

std::string group_digest(const std::string& ref, const CayleyTable& t) {
  if (corpus::is_corpus_ref(ref)) return fnv_digest(serialize_group(t, ref));
  return fnv_digest(read_file(ref));
}

void emit(const Report& r, const Common& c) {
  std::string body = c.json_out ? r.json() : r.text();
  if (c.out.empty())
    std::cout << body;
  else
    write_file(c.out, body);
}

void add_cover_pieces(Report& r, const DigitalImage& base, const std::vector<std::vector<Index>>& pieces) {
  json arr = json::array();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    arr.push_back(points_json(base, pieces[i]));
    if (pieces[i].size() <= 16)
      r.line("  piece " + std::to_string(i + 1) + ": " + points_text(base, pieces[i]));
    else
      r.line("  piece " + std::to_string(i + 1) + ": " + std::to_string(pieces[i].size()) + " points");
  }
  r.result()["pieces"] = arr;
}

int cmd_image_info(const std::string& ref, Report& r) {
  auto img = corpus::resolve_image(ref);
  r.input(ref, image_digest(ref));
  auto comp = components(*img);
  int ncomp = img->empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  auto& res = r.result();
  res["label"] = img->label();
  res["points"] = img->size();
  res["edges"] = img->edge_count();
  res["dim"] = img->dim();
  res["adjacency"] = img->adjacency().describe();
  res["components"] = ncomp;
  res["connected"] = ncomp == 1;
  r.line("image " + img->label() + ": " + std::to_string(img->size()) + " points, " +
         std::to_string(img->edge_count()) + " edges, adjacency " + img->adjacency().describe());
  r.line("components: " + std::to_string(ncomp));
  if (ncomp == 1) {
    res["diameter"] = diameter(*img);
    r.line("diameter: " + std::to_string(diameter(*img)));
  }
  return exit_computed;
}

int cmd_check_continuity(const std::string& file, bool oracle, Report& r) {
  auto f = parse_map(read_file(file), corpus::resolver_for(file));
  r.input(file, fnv_digest(read_file(file)));
  auto c = is_continuous(f);
  r.result()["continuous"] = c.continuous;
  if (c.violation) {
    auto [i, j] = *c.violation;
    const auto& d = *f.domain();
    const auto& cd = *f.codomain();
    r.result()["violation"] = {d.point(i).coords(), d.point(j).coords()};
    r.line("not continuous: " + d.point(i).str() + " ~ " + d.point(j).str() + " map to " + cd.point(f(i)).str() +
           " and " + cd.point(f(j)).str());
  } else {
    r.line("continuous");
  }
  if (oracle && f.domain()->size() > 12) {
    r.result()["oracle"] = nullptr;
    r.line("subset definition skipped: domain has " + std::to_string(f.domain()->size()) + " points (limit 12)");
  } else if (oracle) {
    bool o = is_continuous_oracle(f);
    r.result()["oracle"] = o;
    r.line(std::string("subset definition agrees: ") + (o == c.continuous ? "yes" : "NO"));
  }
  return c.continuous ? exit_computed : exit_negative;
}

int cmd_homotopic(const std::string& ff, const std::string& gf, std::uint64_t budget, const Common& c, Report& r) {
  auto f = parse_map(read_file(ff), corpus::resolver_for(ff));
  auto g = parse_map(read_file(gf), corpus::resolver_for(gf));
  r.input(ff, fnv_digest(read_file(ff)));
  r.input(gf, fnv_digest(read_file(gf)));
  try {
    auto h = are_homotopic(f, g, SearchBudget(budget));
    r.result()["homotopic"] = h.homotopic;
    if (!h.homotopic) {
      r.line("not homotopic (search exhausted)");
      return exit_negative;
    }
    r.result()["length"] = h.witness->length();
    r.line("homotopic, shortest witness has length " + std::to_string(h.witness->length()));
    if (!c.witness.empty()) {
      auto head = detail::tokenize(read_file(ff)).front();
      write_file(c.witness, serialize_homotopy(*h.witness, head.tokens[1], head.tokens[2]));
    }
    return exit_computed;
  } catch (const BudgetExceeded& e) {
    r.result()["homotopic"] = nullptr;
    r.result()["status"] = "budget exhausted";
    r.line(std::string("inconclusive: ") + e.what());
    return exit_computed;
  }
}

int cmd_contractible(const std::string& ref, std::uint64_t budget, const Common& c, Report& r) {
  auto img = corpus::resolve_image(ref);
  r.input(ref, image_digest(ref));
  try {
    auto res = is_contractible(img, SearchBudget(budget));
    r.result()["contractible"] = res.nullhomotopic;
    if (!res.nullhomotopic) {
      r.line(img->label() + " is not contractible (search exhausted)");
      return exit_negative;
    }
    r.result()["length"] = res.witness->length();
    r.result()["constant"] = img->point(*res.constant).coords();
    r.line(img->label() + " is contractible to " + img->point(*res.constant).str() + " in " +
           std::to_string(res.witness->length()) + " steps");
    if (!c.witness.empty()) write_file(c.witness, serialize_homotopy(*res.witness, ref, ref));
    return exit_computed;
  } catch (const BudgetExceeded& e) {
    r.result()["contractible"] = nullptr;
    r.result()["status"] = "budget exhausted";
    r.line(std::string("inconclusive: ") + e.what());
    return exit_computed;
  }
}

int cmd_cat(const std::string& ref, bool bounds, std::uint64_t budget, const Common& c, Report& r) {
  auto img = corpus::resolve_image(ref);
  r.input(ref, image_digest(ref));
  CoverOptions opts;
  opts.call_budget = budget;
  auto mode = bounds ? CoverMode::bounds : CoverMode::exact;
  r.result()["mode"] = to_string(mode);
  r.result()["convention"] = cat_convention;
  try {
    auto res = cat(img, mode, opts);
    r.result()["value"] = bounds_json(res.bounds);
    r.line("cat(" + img->label() + ") = " + res.bounds.str() + " (" + to_string(mode) + "; " + cat_convention + ")");
    if (res.witness) {
      r.result()["verified"] = verify_cover(NullhomotopyOracle(img), *res.witness);
      add_cover_pieces(r, *img, res.witness->pieces);
      if (!c.witness.empty()) write_file(c.witness, serialize_cat_witness(*res.witness, *img, ref));
    }
  } catch (const BudgetExceeded& e) {
    r.result()["status"] = "budget exhausted";
    r.line(std::string("budget exhausted: ") + e.what());
  }
  return exit_computed;
}

int cmd_genus(const std::string& ref, int n, std::optional<int> m, FunctionSpaceMode fmode, bool bounds,
              std::uint64_t budget, const Common& c, Report& r) {
  auto img = corpus::resolve_image(ref);
  r.input(ref, image_digest(ref));
  int len = m ? *m : diameter(*img);
  auto fib = std::make_shared<const EndpointFibration>(img, n, len, fmode);
  CoverOptions opts;
  opts.call_budget = budget;
  auto mode = bounds ? CoverMode::bounds : CoverMode::exact;
  auto& res = r.result();
  res["n"] = n;
  res["m"] = len;
  res["function_space"] = to_string(fmode);
  res["mode"] = to_string(mode);
  if (!fib->is_surjective()) {
    res["surjective"] = false;
    res["uncovered"] = fib->uncovered().size();
    r.line("e_" + std::to_string(n) + " with m=" + std::to_string(len) + " is not surjective (" +
           std::to_string(fib->uncovered().size()) + " base points uncovered); genus undefined");
    return exit_computed;
  }
  res["surjective"] = true;
  try {
    auto g = schwarz_genus<EndpointFibration>(fib, mode, opts);
    res["value"] = bounds_json(g.bounds);
    r.line("genus(e_" + std::to_string(n) + " on " + img->label() + ", m=" + std::to_string(len) + ", " +
           to_string(fmode) + ") = " + g.bounds.str() + " (" + to_string(mode) + ")");
    if (g.witness) {
      res["verified"] = verify_tc_cover(*fib, *g.witness);
      add_cover_pieces(r, *fib->base(), g.witness->pieces);
      if (!c.witness.empty()) write_file(c.witness, serialize_genus_witness(*g.witness, *fib, ref));
    }
  } catch (const BudgetExceeded& e) {
    res["status"] = "budget exhausted";
    r.line(std::string("budget exhausted: ") + e.what());
  }
  return exit_computed;
}

int cmd_tc(const std::string& ref, int n, std::optional<int> m, FunctionSpaceMode fmode, bool bounds,
           const std::string& group_ref, std::uint64_t budget, const Common& c, Report& r) {
  auto img = corpus::resolve_image(ref);
  r.input(ref, image_digest(ref));
  TcOptions opts;
  opts.m = m;
  opts.mode = fmode;
  opts.cover.call_budget = budget;
  if (bounds) opts.direct_genus = false;
  std::string gref = group_ref;
  if (gref == "auto") {
    gref.clear();
    if (corpus::is_corpus_ref(ref))
      if (auto d = corpus::default_group(ref.substr(std::char_traits<char>::length(corpus::prefix))))
        gref = std::string(corpus::prefix) + *d;
  } else if (gref == "none") {
    gref.clear();
  }
  if (!gref.empty()) {
    opts.group = corpus::resolve_group(gref);
    r.input(gref, group_digest(gref, *opts.group));
  }
  auto& res = r.result();
  res["n"] = n;
  res["function_space"] = to_string(fmode);
  res["group"] = gref.empty() ? json(nullptr) : json(gref);
  res["convention"] = cat_convention;
  try {
    auto t = tc_n(img, n, opts);
    res["m"] = t.m;
    res["value"] = bounds_json(t.bounds);
    res["notes"] = t.notes;
    r.line("TC_" + std::to_string(n) + "(" + img->label() + ", m=" + std::to_string(t.m) + ", " + to_string(fmode) +
           ") = " + t.bounds.str());
    for (const auto& note : t.notes) r.line("  " + note);
    if (t.witness) {
      bool ok = verify_tc_cover(*t.fibration, *t.witness);
      res["verified"] = ok;
      r.line(std::string("  section cover: ") + std::to_string(t.witness->pieces.size()) + " pieces, " +
             (ok ? "verified" : "FAILED verification"));
      add_cover_pieces(r, *t.fibration->base(), t.witness->pieces);
      if (!c.witness.empty()) write_file(c.witness, serialize_genus_witness(*t.witness, *t.fibration, ref));
    }
  } catch (const BudgetExceeded& e) {
    res["status"] = "budget exhausted";
    r.line(std::string("budget exhausted: ") + e.what());
  }
  return exit_computed;
}

json failure_json(const std::optional<MapFailure>& f) {
  if (!f) return nullptr;
  return {{"from", {f->from_a.coords(), f->from_b.coords()}}, {"to", {f->to_a.coords(), f->to_b.coords()}}};
}

std::string failure_text(const MapFailure& f) {
  return f.from_a.str() + " ~ " + f.from_b.str() + " go to " + f.to_a.str() + ", " + f.to_b.str();
}

void describe_verdict(const TopGroupVerdict& v, Report& r, json& out) {
  out["axioms"] = {{"closure", v.axioms.closure},
                   {"associativity", v.axioms.associativity},
                   {"identity", v.axioms.identity},
                   {"inverses", v.axioms.inverses},
                   {"window", v.axioms.window}};
  out["alpha_continuous"] = v.alpha_continuous;
  out["beta_continuous"] = v.beta_continuous;
  out["alpha_witness"] = failure_json(v.alpha_witness);
  out["beta_witness"] = failure_json(v.beta_witness);
  out["product_mode"] = to_string(v.product_mode);
  out["topological_group"] = v.ok();
  for (const auto& f : v.axioms.failures) r.line("  " + f);
  if (v.axioms.ok()) {
    r.line(std::string("  multiplication: ") + (v.alpha_continuous ? "continuous" : "not continuous") +
           (v.alpha_witness ? " (" + failure_text(*v.alpha_witness) + ")" : ""));
    r.line(std::string("  inversion: ") + (v.beta_continuous ? "continuous" : "not continuous") +
           (v.beta_witness ? " (" + failure_text(*v.beta_witness) + ")" : ""));
  }
}

int cmd_group_check(const std::string& ref, bool strong, Report& r) {
  auto t = corpus::resolve_group(ref);
  r.input(ref, group_digest(ref, t));
  auto v = is_topological_group(t, strong ? ProductMode::strong : ProductMode::min);
  r.line(t.carrier()->label() + ": " + (v.ok() ? "topological group" : "not a topological group") +
         (t.window() ? " on this window" : "") + " (" + to_string(v.product_mode) + " product)");
  describe_verdict(v, r, r.result());
  return v.ok() ? exit_computed : exit_negative;
}

int cmd_group_scan(int p, Report& r) {
  auto scan = interval_group_scan(p);
  auto& res = r.result();
  res["length"] = p;
  res["structures"] = scan.entries.size();
  res["topological"] = scan.topological();
  r.line(std::to_string(scan.entries.size()) + " structures, " + std::to_string(scan.topological()) +
         " topological");
  json entries = json::array();
  for (const auto& e : scan.entries) {
    json row;
    std::string table;
    const Index n = static_cast<Index>(e.table.order());
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) table += std::to_string(*e.table.multiply(a, b));
    row["table"] = table;
    row["identity"] = e.table.identity();
    describe_verdict(e.verdict, r, row);
    entries.push_back(row);
  }
  res["entries"] = entries;
  return exit_computed;
}

int cmd_group_product(const std::string& a, const std::string& b, Report& r) {
  auto t1 = corpus::resolve_group(a);
  auto t2 = corpus::resolve_group(b);
  r.input(a, group_digest(a, t1));
  r.input(b, group_digest(b, t2));
  auto p = product_group(t1, t2);
  auto v = is_topological_group(p);
  r.result()["order"] = p.order();
  r.line("product of order " + std::to_string(p.order()) + ": " +
         (v.ok() ? "topological group" : "not a topological group"));
  describe_verdict(v, r, r.result());
  return v.ok() ? exit_computed : exit_negative;
}

int cmd_hom_check(const std::string& file, const std::string& g1, const std::string& g2, Report& r) {
  auto f = parse_map(read_file(file), corpus::resolver_for(file));
  auto t1 = corpus::resolve_group(g1);
  auto t2 = corpus::resolve_group(g2);
  r.input(file, fnv_digest(read_file(file)));
  r.input(g1, group_digest(g1, t1));
  r.input(g2, group_digest(g2, t2));
  auto h = check_homomorphism(f, t1, t2);
  auto& res = r.result();
  res["homomorphism"] = h.homomorphism;
  res["continuous"] = h.continuous;
  res["bijective"] = h.bijective;
  res["inverse_continuous"] = h.inverse_continuous;
  res["top_homomorphism"] = h.top_homomorphism();
  res["group_isomorphism"] = h.group_isomorphism();
  res["top_isomorphism"] = h.top_isomorphism();
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  r.line("group homomorphism: " + yn(h.homomorphism));
  r.line("continuous: " + yn(h.continuous));
  r.line("topological homomorphism: " + yn(h.top_homomorphism()));
  r.line("group isomorphism: " + yn(h.group_isomorphism()));
  r.line("inverse continuous: " + yn(h.inverse_continuous));
  r.line("topological isomorphism: " + yn(h.top_isomorphism()));
  return h.top_homomorphism() ? exit_computed : exit_negative;
}

int cmd_verify_paper(bool perturb, std::uint64_t budget, Report& r) {
  ReproOptions opts;
  opts.budget = budget;
  opts.perturb = perturb;
  auto rows = reproduce(opts);
  json arr = json::array();
  std::size_t w = 0;
  for (const auto& row : rows) w = std::max(w, row.claim.size());
  for (const auto& row : rows) {
    arr.push_back({{"claim", row.claim}, {"expected", row.expected}, {"computed", row.computed}, {"status", row.status}});
    std::string pad(w - row.claim.size(), ' ');
    r.line(row.claim + pad + " | " + row.expected + " | " + row.computed + " | " + row.status);
  }
  bool ok = all_match(rows);
  r.result()["rows"] = arr;
  r.result()["all_match"] = ok;
  r.line(ok ? "all rows match" : "MISMATCH");
  return ok ? exit_computed : exit_negative;
}

int cmd_verify_witness(const std::string& file, Report& r) {
  auto text = read_file(file);
  r.input(file, fnv_digest(text));
  auto wf = parse_witness(text, corpus::resolver_for(file));
  auto c = verify_witness(wf);
  r.result()["kind"] = c.kind;
  r.result()["pieces"] = c.pieces;
  r.result()["verified"] = c.ok;
  r.line(c.kind + " witness with " + std::to_string(c.pieces) + " pieces: " +
         (c.ok ? "verified" : "FAILED (" + c.detail + ")"));
  return c.ok ? exit_computed : exit_negative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital topology toolkit: continuity, homotopy, cat, TC_n and topological groups"};
  app.require_subcommand(1);
  Common common;
  std::string ref, ref2, ref3, budget_s = "default", mode_s = "pointwise", group_ref = "auto";
  int n = 2, p = 3;
  std::optional<int> m;
  bool exact = false, bounds = false, oracle = false, strong = false, perturb = false;

  auto budget_opt = [&](CLI::App* cmd) {
    cmd->add_option("--budget", budget_s, "Search budget: tiny, small, default, large or a step count");
  };
  auto exact_bounds = [&](CLI::App* cmd) {
    auto* e = cmd->add_flag("--exact", exact, "Exact minimum cover (default)");
    auto* b = cmd->add_flag("--bounds", bounds, "Lower and upper bounds only");
    e->excludes(b);
  };
  auto fib_opts = [&](CLI::App* cmd) {
    cmd->add_option("-n", n, "Number of arms")->check(CLI::PositiveNumber);
    cmd->add_option("--m", m, "Arm length (default: diameter)");
    cmd->add_option("--mode", mode_s, "Function-space adjacency: pointwise or strong");
  };

  auto* info = app.add_subcommand("image-info", "Points, edges and connectivity of an image");
  info->add_option("image", ref, "corpus:<name> or image file")->required();
  add_common(info, common);

  auto* cont = app.add_subcommand("check-continuity", "Check a map file for digital continuity");
  cont->add_option("map", ref, "Map file")->required();
  cont->add_flag("--oracle", oracle, "Also run the connected-subset definition (domains up to 12 points)");
  add_common(cont, common);

  auto* homo = app.add_subcommand("homotopic", "Search for a homotopy between two maps");
  homo->add_option("f", ref, "Map file")->required();
  homo->add_option("g", ref2, "Map file")->required();
  budget_opt(homo);
  add_common(homo, common);
  add_witness(homo, common);

  auto* contr = app.add_subcommand("contractible", "Decide whether an image is contractible");
  contr->add_option("image", ref, "corpus:<name> or image file")->required();
  budget_opt(contr);
  add_common(contr, common);
  add_witness(contr, common);

  auto* catc = app.add_subcommand("cat", "LS-category with a verified cover");
  catc->add_option("image", ref, "corpus:<name> or image file")->required();
  exact_bounds(catc);
  budget_opt(catc);
  add_common(catc, common);
  add_witness(catc, common);

  auto* genus = app.add_subcommand("genus", "Schwarz genus of the endpoint map e_n");
  genus->add_option("image", ref, "corpus:<name> or image file")->required();
  fib_opts(genus);
  exact_bounds(genus);
  budget_opt(genus);
  add_common(genus, common);
  add_witness(genus, common);

  auto* tc = app.add_subcommand("tc", "Higher topological complexity TC_n");
  tc->add_option("image", ref, "corpus:<name> or image file")->required();
  fib_opts(tc);
  exact_bounds(tc);
  tc->add_option("--group", group_ref, "Group table: auto, none, corpus:<name> or group file");
  budget_opt(tc);
  add_common(tc, common);
  add_witness(tc, common);

  auto* gcheck = app.add_subcommand("group-check", "Verify a topological group");
  gcheck->add_option("group", ref, "corpus:<name> or group file")->required();
  gcheck->add_flag("--strong", strong, "Use the strong product for the multiplication (diagnostic)");
  add_common(gcheck, common);

  auto* gscan = app.add_subcommand("group-scan", "Every group structure on [0,p-1] with c1 adjacency");
  gscan->add_option("-p", p, "Interval length (at most 6)")->required();
  add_common(gscan, common);

  auto* gprod = app.add_subcommand("group-product", "Product of two groups on the minimal product");
  gprod->add_option("g1", ref, "First group")->required();
  gprod->add_option("g2", ref2, "Second group")->required();
  add_common(gprod, common);

  auto* hom = app.add_subcommand("hom-check", "Homomorphism and isomorphism checks for a map");
  hom->add_option("map", ref, "Map file")->required();
  hom->add_option("g1", ref2, "Domain group")->required();
  hom->add_option("g2", ref3, "Codomain group")->required();
  add_common(hom, common);

  auto* paper = app.add_subcommand("verify-paper", "Run the reproduction table");
  paper->add_flag("--perturb", perturb, "Remove one edge of H first");
  budget_opt(paper);
  add_common(paper, common);

  auto* vw = app.add_subcommand("verify-witness", "Re-verify a witness file");
  vw->add_option("file", ref, "Witness file")->required();
  add_common(vw, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_error;
  }

  auto* cmd = app.get_subcommands().front();
  Report report(cmd->get_name());
  auto start = std::chrono::steady_clock::now();
  int code = exit_error;
  try {
    std::uint64_t budget = parse_budget(budget_s);
    FunctionSpaceMode fmode = parse_mode(mode_s);
    const std::string name = cmd->get_name();
    if (name == "image-info") code = cmd_image_info(ref, report);
    else if (name == "check-continuity") code = cmd_check_continuity(ref, oracle, report);
    else if (name == "homotopic") code = cmd_homotopic(ref, ref2, budget, common, report);
    else if (name == "contractible") code = cmd_contractible(ref, budget, common, report);
    else if (name == "cat") code = cmd_cat(ref, bounds, budget, common, report);
    else if (name == "genus") code = cmd_genus(ref, n, m, fmode, bounds, budget, common, report);
    else if (name == "tc") code = cmd_tc(ref, n, m, fmode, bounds, group_ref, budget, common, report);
    else if (name == "group-check") code = cmd_group_check(ref, strong, report);
    else if (name == "group-scan") code = cmd_group_scan(p, report);
    else if (name == "group-product") code = cmd_group_product(ref, ref2, report);
    else if (name == "hom-check") code = cmd_hom_check(ref, ref2, ref3, report);
    else if (name == "verify-paper") code = cmd_verify_paper(perturb, budget, report);
    else if (name == "verify-witness") code = cmd_verify_witness(ref, report);
    if (common.timing)
      report.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    emit(report, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return code;
}
