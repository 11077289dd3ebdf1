#include "genein/io_cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "genein/curvature.hpp"

namespace genein {

double default_tolerance() {
  if (const char* s = std::getenv("GENEIN_TOL")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && *end == '\0' && v > 0 && std::isfinite(v)) return v;
  }
  return kDefaultTol;
}

// ----------------------------------------------------------------- load

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int index_field(const json& e, const char* key, int n, const char* what) {
  if (!e.contains(key) || !e[key].is_number_integer())
    throw Error(ErrorKind::Input, std::string(what) + ": field '" + key + "' must be an integer");
  int v = e[key].get<int>();
  if (v < 1 || v > n) throw Error(ErrorKind::Dimension, std::string(what) + ": index " + std::to_string(v) + " out of range");
  return v;
}

double number_field(const json& e, const char* key, const char* what) {
  if (!e.contains(key) || !e[key].is_number()) throw Error(ErrorKind::Input, std::string(what) + ": field '" + key + "' must be a number");
  return e[key].get<double>();
}

Vec number_list(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw Error(ErrorKind::Dimension, std::string(what) + " must be a list of length " + std::to_string(n));
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::Input, std::string(what) + " must contain numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

std::string sub(int i, int j) { return std::to_string(i) + std::to_string(j); }

}  // namespace

GEProblem load_problem_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Input, "problem must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw Error(ErrorKind::Input, "field 'dim' must be an integer");
  const int n = j["dim"].get<int>();
  if (n < 1) throw Error(ErrorKind::Dimension, "dim must be positive");

  // brackets: only i < j; reversed entries are reported against their
  // partner so the conflict is visible.
  std::map<std::array<int, 3>, double> seen;
  std::vector<Bracket> br;
  const json& jb = j.contains("brackets") ? j["brackets"] : json::array();
  if (!jb.is_array()) throw Error(ErrorKind::Input, "'brackets' must be a list");
  for (const auto& e : jb) {
    const int bi = index_field(e, "i", n, "bracket"), bj = index_field(e, "j", n, "bracket"),
              bk = index_field(e, "k", n, "bracket");
    const double c = number_field(e, "c", "bracket");
    if (bi == bj && c != 0)
      throw Error(ErrorKind::Antisymmetry, "antisymmetry: c^" + std::to_string(bk) + "_" + sub(bi, bj) + " must vanish", std::abs(c));
    std::array<int, 3> key{bk, std::min(bi, bj), std::max(bi, bj)};
    const double v = bi < bj ? c : -c;
    auto it = seen.find(key);
    if (it != seen.end()) {
      const int lo = key[1], hi = key[2];
      throw Error(ErrorKind::Antisymmetry,
                  "antisymmetry conflict: c^" + std::to_string(bk) + "_" + sub(lo, hi) + " given twice (" + std::to_string(it->second) +
                      " and, from c^" + std::to_string(bk) + "_" + sub(bi, bj) + ", " + std::to_string(v) + ")",
                  std::abs(it->second - v));
    }
    seen[key] = v;
    if (bi > bj)
      throw Error(ErrorKind::Antisymmetry, "bracket entries need i < j; got c^" + std::to_string(bk) + "_" + sub(bi, bj) +
                                               " (write it as c^" + std::to_string(bk) + "_" + sub(bj, bi) + " = " + std::to_string(-c) + ")");
    br.push_back({bi, bj, bk, c});
  }
  LieAlgebra alg = new_lie_algebra(n, br);

  if (!j.contains("metric")) throw Error(ErrorKind::Input, "field 'metric' is required");
  Vec gflat = number_list(j["metric"], n * n, "metric");
  Mat g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = gflat(r * n + c);
  const double asym = sup_norm(g - g.transpose());
  // Round-off asymmetry is accepted, same bound as ScalarProduct.
  if (asym > 1e-12 * (1.0 + sup_norm(g))) throw Error(ErrorKind::Input, "metric is not symmetric", asym);
  g = 0.5 * (g + g.transpose());
  ScalarProduct metric(g);

  KForm h(n, 3);
  if (j.contains("h_form")) {
    if (!j["h_form"].is_array()) throw Error(ErrorKind::Input, "'h_form' must be a list");
    std::map<std::array<int, 3>, double> hs;
    for (const auto& e : j["h_form"]) {
      const int a = index_field(e, "i", n, "h_form"), b = index_field(e, "j", n, "h_form"), c = index_field(e, "k", n, "h_form");
      const double v = number_field(e, "v", "h_form");
      if (!(a < b && b < c)) throw Error(ErrorKind::Antisymmetry, "h_form entries need i < j < k");
      if (hs.count({a, b, c})) throw Error(ErrorKind::Antisymmetry, "h_form entry given twice");
      hs[{a, b, c}] = v;
      h.set({a - 1, b - 1, c - 1}, v);
    }
  }

  Divergence d = Divergence::zero(n);
  if (j.contains("delta")) {
    const json& jd = j["delta"];
    if (!jd.is_object()) throw Error(ErrorKind::Input, "'delta' must be an object");
    if (jd.contains("on_vectors")) d.on_vectors = number_list(jd["on_vectors"], n, "delta.on_vectors");
    if (jd.contains("on_covectors")) d.on_covectors = number_list(jd["on_covectors"], n, "delta.on_covectors");
  }
  double tol = default_tolerance();
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() > 0))
      throw Error(ErrorKind::Input, "tolerance must be a positive number");
    tol = j["tolerance"].get<double>();
  }
  return make_problem(alg, metric, h, d, tol);
}

GEProblem load_problem(const std::string& path_or_text) {
  std::size_t p = path_or_text.find_first_not_of(" \t\r\n");
  const bool inline_text = p != std::string::npos && path_or_text[p] == '{';
  const std::string text = inline_text ? path_or_text : read_file(path_or_text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Input, std::string("parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  return load_problem_json(j);
}

json problem_to_json(const GEProblem& p) {
  const int n = p.dim();
  json j;
  j["dim"] = n;
  json br = json::array();
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        double c = p.algebra.c(k, i, jj);
        if (c != 0) br.push_back({{"i", i + 1}, {"j", jj + 1}, {"k", k + 1}, {"c", c}});
      }
  j["brackets"] = br;
  json g = json::array();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g.push_back(p.metric.matrix()(r, c));
  j["metric"] = g;
  json h = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        double v = p.h.dim() ? p.h.at({a, b, c}) : 0.0;
        if (v != 0) h.push_back({{"i", a + 1}, {"j", b + 1}, {"k", c + 1}, {"v", v}});
      }
  j["h_form"] = h;
  j["delta"] = {{"on_vectors", std::vector<double>(p.delta.on_vectors.data(), p.delta.on_vectors.data() + n)},
                {"on_covectors", std::vector<double>(p.delta.on_covectors.data(), p.delta.on_covectors.data() + n)}};
  j["tolerance"] = p.tolerance;
  return j;
}

std::string serialize(const GEProblem& p) { return problem_to_json(p).dump(2); }

// --------------------------------------------------------------- reports

json verify_report(const GEProblem& p, Route route) {
  json r;
  EinsteinReport e = einstein_residuals(p);
  r["eq1"] = e.eq1;
  r["eq2"] = e.eq2;
  r["eq3"] = e.eq3;
  r["eq4"] = e.eq4;
  r["total"] = e.total;
  r["is_einstein"] = e.is_einstein;
  r["tolerance"] = p.tolerance;
  auto sig = p.metric.signature();
  r["signature"] = {sig.first, sig.second};
  r["flat"] = curvature_report(p.algebra, p.metric).is_flat;
  try {
    r["div_space_dim"] = admissible_divergences(p.algebra, p.metric, p.h, p.tolerance).dim();
  } catch (const Error&) {
    r["div_space_dim"] = nullptr;  // δ = 0 is not generalised Einstein
  }
  StructureInfo si = structure_analysis(p.algebra);
  r["structure"] = {{"commutator_dim", si.commutator_ideal.dim()},
                    {"center_dim", si.center.dim()},
                    {"solvable", si.is_solvable},
                    {"nilpotent", si.is_nilpotent},
                    {"unimodular", si.is_unimodular}};
  if (route != Route::General) {
    TraceResiduals t = trace_route_residuals(p);
    r["trace"] = {{"eq_a", t.eq_a}, {"eq_b", t.eq_b}, {"total", t.total()}, {"is_einstein", t.total() < p.tolerance}};
    if (route == Route::Both) r["routes_agree"] = (t.total() < p.tolerance) == e.is_einstein;
    if (route == Route::Trace) r["is_einstein"] = t.total() < p.tolerance;
  }
  return r;
}

json curvature_json(const GEProblem& p, bool bismut) {
  CurvatureReport c = curvature_report(p.algebra, p.metric);
  json r;
  r["flat"] = c.is_flat;
  r["riemann_max_abs"] = c.max_abs;
  r["scalar"] = c.scalar;
  json ric = json::array();
  for (int i = 0; i < c.ricci.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < c.ricci.cols(); ++k) row.push_back(c.ricci(i, k));
    ric.push_back(row);
  }
  r["ricci"] = ric;
  r["soliton_residual"] = soliton_residual(p.algebra, p.metric);
  if (bismut) {
    r["bismut_ricci_plus_max_abs"] = sup_norm(bismut_ricci(p, +1));
    r["bismut_ricci_minus_max_abs"] = sup_norm(bismut_ricci(p, -1));
  }
  return r;
}

json scan_json(const std::string& id, const std::vector<ScanPoint>& pts) {
  json arr = json::array();
  for (const auto& s : pts) {
    json pj = json::object();
    for (const auto& [k, v] : s.params) pj[k] = v;
    json e = {{"params", pj}, {"ok", s.ok}};
    if (s.ok)
      e["residual"] = s.residual;
    else
      e["error"] = s.error;
    arr.push_back(e);
  }
  return {{"family", id}, {"points", arr}};
}

Grid parse_grid(const std::string& text) {
  Grid g;
  std::stringstream ss(text);
  std::string item;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::Input, "grid: bad number '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::Input, "grid: expected name=values in '" + item + "'");
    const std::string name = item.substr(0, eq), rest = item.substr(eq + 1);
    std::vector<double> vals;
    if (std::count(rest.begin(), rest.end(), ':') == 2) {
      auto c1 = rest.find(':'), c2 = rest.rfind(':');
      const double a = num(rest.substr(0, c1)), b = num(rest.substr(c1 + 1, c2 - c1 - 1));
      const double cnt = num(rest.substr(c2 + 1));
      if (cnt < 1 || cnt != std::round(cnt)) throw Error(ErrorKind::Input, "grid: count must be a positive integer");
      const int m = static_cast<int>(cnt);
      for (int i = 0; i < m; ++i) vals.push_back(m == 1 ? a : a + (b - a) * i / (m - 1));
    } else {
      std::stringstream vs(rest);
      std::string v;
      while (std::getline(vs, v, ',')) vals.push_back(num(v));
    }
    if (vals.empty()) throw Error(ErrorKind::Input, "grid: no values for " + name);
    g[name] = vals;
  }
  if (g.empty()) throw Error(ErrorKind::Input, "grid: empty specification");
  return g;
}

// ------------------------------------------------------------------ CLI

namespace {

void write_out(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Input, "cannot write " + path);
  f << text << "\n";
}

Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::Input, "--param expects name=value, got '" + s + "'");
    Grid g = parse_grid(s);
    if (g.begin()->second.size() != 1) throw Error(ErrorKind::Input, "--param takes a single value");
    p[s.substr(0, eq)] = g.begin()->second[0];
  }
  return p;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

void print_verify_text(const json& r, std::ostream& out) {
  for (const char* k : {"eq1", "eq2", "eq3", "eq4", "total"}) out << std::left << std::setw(8) << k << r[k].get<double>() << "\n";
  out << "generalised Einstein: " << (r["is_einstein"].get<bool>() ? "yes" : "no") << " (tol " << r["tolerance"].get<double>() << ")\n";
  out << "signature: (" << r["signature"][0] << "," << r["signature"][1] << ")\n";
  out << "flat: " << (r["flat"].get<bool>() ? "yes" : "no") << "\n";
  out << "admissible divergences: " << (r["div_space_dim"].is_null() ? std::string("n/a (δ = 0 is not generalised Einstein)") : "dim " + r["div_space_dim"].dump()) << "\n";
  const json& s = r["structure"];
  out << "g' dim " << s["commutator_dim"] << ", center dim " << s["center_dim"] << (s["unimodular"].get<bool>() ? ", unimodular" : "")
      << (s["nilpotent"].get<bool>() ? ", nilpotent" : s["solvable"].get<bool>() ? ", solvable" : "") << "\n";
  if (r.contains("trace"))
    out << "trace route: eq_a " << r["trace"]["eq_a"].get<double>() << ", eq_b " << r["trace"]["eq_b"].get<double>() << "\n";
  if (r.contains("routes_agree")) out << "routes agree: " << (r["routes_agree"].get<bool>() ? "yes" : "NO") << "\n";
}

const LieAlgebra resolve_algebra(const std::string& name) {
  try {
    return table_entry(name).algebra;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownName) throw;
  }
  try {
    return instantiate_family(name).algebra;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownName) throw;
  }
  return load_problem(name).algebra;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"generalised Einstein checks for metric Lie algebras", "genein"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "check the generalised Einstein equations");
  std::string file, route_s = "general";
  double tol = 0;
  verify->add_option("file", file, "problem JSON")->required();
  verify->add_option("--tol", tol, "tolerance (overrides the file)");
  verify->add_option("--route", route_s, "general|trace|both")->check(CLI::IsMember({"general", "trace", "both"}));

  auto* curv = app.add_subcommand("curvature", "Levi-Civita (and Bismut) curvature");
  bool bismut = false;
  curv->add_option("file", file, "problem JSON")->required();
  curv->add_flag("--bismut", bismut, "also Bismut Ricci tensors");

  auto* cat = app.add_subcommand("catalog", "families and the four-dimensional table");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list families and table entries");
  auto* cat_show = cat->add_subcommand("show", "describe a family or table entry");
  std::string name;
  cat_show->add_option("name", name)->required();
  auto* cat_build = cat->add_subcommand("build", "build a family instance as a problem file");
  std::vector<std::string> kv;
  std::string out_path;
  cat_build->add_option("family_id", name)->required();
  cat_build->add_option("--param", kv, "name=value (repeatable)");
  cat_build->add_option("--out", out_path);

  auto* scan = app.add_subcommand("scan", "residuals over a parameter grid");
  std::string grid_spec;
  scan->add_option("family_id", name)->required();
  scan->add_option("--grid", grid_spec, "a=1,2;b=0:1:5, or 'default'")->required();
  scan->add_option("--out", out_path);

  auto* fal = app.add_subcommand("falsify", "random search for generalised Einstein metrics");
  std::string sig_s;
  long trials = 1000;
  std::uint64_t seed = 0;
  double gap = 0;
  fal->add_option("name", name, "table entry, family id or problem file")->required();
  fal->add_option("--signature", sig_s, "p,q")->required();
  fal->add_option("--trials", trials)->required();
  fal->add_option("--seed", seed)->required();
  fal->add_option("--gap", gap, "redraw metrics with near-degenerate g'");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (verify->parsed()) {
      GEProblem p = load_problem(file);
      if (tol > 0) p.tolerance = tol;
      Route route = route_s == "trace" ? Route::Trace : route_s == "both" ? Route::Both : Route::General;
      json r = verify_report(p, route);
      if (as_json)
        out << r.dump(2) << "\n";
      else
        print_verify_text(r, out);
      return r["is_einstein"].get<bool>() ? 0 : 1;
    }
    if (curv->parsed()) {
      GEProblem p = load_problem(file);
      json r = curvature_json(p, bismut);
      if (as_json) {
        out << r.dump(2) << "\n";
      } else {
        out << "flat: " << (r["flat"].get<bool>() ? "yes" : "no") << "\n";
        out << "scalar curvature: " << r["scalar"].get<double>() << "\n";
        out << "Ricci soliton residual: " << r["soliton_residual"].get<double>() << "\n";
        if (bismut)
          out << "Bismut Ricci sup-norm: + " << r["bismut_ricci_plus_max_abs"].get<double>() << ", - "
              << r["bismut_ricci_minus_max_abs"].get<double>() << "\n";
      }
      return 0;
    }
    if (cat_list->parsed()) {
      json fams = json::array(), ents = json::array();
      for (const auto& f : families()) fams.push_back(f.family_id);
      for (const auto& e : table_entries()) ents.push_back({{"name", e.name}, {"key", e.key}});
      if (as_json) {
        out << json{{"families", fams}, {"table", ents}}.dump(2) << "\n";
      } else {
        out << "families:\n";
        for (const auto& f : families()) out << "  " << std::left << std::setw(16) << f.family_id << f.source << "\n";
        out << "table entries:\n";
        for (const auto& e : table_entries())
          out << "  " << std::left << std::setw(10) << e.key << e.name << "  " << ge_flag_symbol(e.ge_flag) << "\n";
      }
      return 0;
    }
    if (cat_show->parsed()) {
      json r;
      bool found = false;
      for (const auto& f : families())
        if (f.family_id == name) {
          json d = json::object();
          for (const auto& [k, v] : resolved_params(name)) d[k] = std::isnan(v) ? json("auto") : json(v);
          r = {{"family", f.family_id}, {"params", f.param_names}, {"domain", f.param_domain}, {"source", f.source},
               {"defaults", d}, {"default_grid_size", default_grid(name).size()}};
          found = true;
        }
      if (!found) {
        CatalogEntry e = table_entry(name);
        json diffs = json::array();
        for (const auto& t : e.differentials) diffs.push_back({{"k", t.k}, {"i", t.i}, {"j", t.j}, {"value", t.value}});
        json ideals = json::array();
        for (const auto& w : e.codim1_ideals) ideals.push_back(w.label);
        json pj = json::object();
        for (const auto& [k, v] : e.params) pj[k] = v;
        r = {{"name", e.name}, {"key", e.key}, {"params", pj}, {"differentials", diffs}, {"unimodular", e.unimodular},
             {"codim1_ideals", ideals}, {"commutator", e.commutator_label}, {"ge_flag", ge_flag_symbol(e.ge_flag)},
             {"ge_condition", e.ge_condition}};
      }
      if (as_json) {
        out << r.dump(2) << "\n";
      } else {
        for (auto it = r.begin(); it != r.end(); ++it) out << it.key() << ": " << it.value().dump() << "\n";
      }
      return 0;
    }
    if (cat_build->parsed()) {
      GEProblem p = instantiate_family(name, parse_params(kv));
      write_out(serialize(p), out_path, out);
      return 0;
    }
    if (scan->parsed()) {
      family(name);
      std::vector<ScanPoint> pts;
      if (grid_spec == "default") {
        for (const auto& p : default_grid(name)) {
          Grid g;
          for (const auto& [k, v] : p) g[k] = {v};
          auto one = residual_scan(name, g);
          pts.insert(pts.end(), one.begin(), one.end());
        }
      } else {
        pts = residual_scan(name, parse_grid(grid_spec));
      }
      json r = scan_json(name, pts);
      if (as_json || !out_path.empty()) {
        write_out(r.dump(2), out_path, out);
      } else {
        for (const auto& s : pts) {
          std::string ps;
          for (const auto& [k, v] : s.params)
            if (!std::isnan(v)) ps += k + "=" + fmt(v) + " ";
          out << ps << "-> " << (s.ok ? fmt(s.residual) : "error: " + s.error) << "\n";
        }
      }
      return 0;
    }
    if (fal->parsed()) {
      auto comma = sig_s.find(',');
      if (comma == std::string::npos) throw Error(ErrorKind::Input, "--signature expects p,q");
      std::pair<int, int> sig;
      try {
        sig = {std::stoi(sig_s.substr(0, comma)), std::stoi(sig_s.substr(comma + 1))};
      } catch (const std::exception&) {
        throw Error(ErrorKind::Input, "--signature expects p,q");
      }
      LieAlgebra g = resolve_algebra(name);
      FalsifyOptions opt;
      opt.commutator_gap = gap;
      FalsifyResult fr = random_falsification(g, sig, trials, seed, opt);
      json r = {{"name", name}, {"signature", {sig.first, sig.second}}, {"trials", fr.trials}, {"seed", seed},
                {"min_residual", fr.min_residual}, {"argmin_trial", fr.argmin_trial}, {"argmin", problem_to_json(fr.argmin)}};
      if (as_json) {
        out << r.dump(2) << "\n";
      } else {
        out << "min_residual " << std::setprecision(17) << fr.min_residual << " at trial " << fr.argmin_trial << " of "
            << fr.trials << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error (" << error_kind_name(e.kind()) << "): " << e.what();
    if (e.residual() != 0) err << " [residual " << e.residual() << "]";
    err << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace genein
