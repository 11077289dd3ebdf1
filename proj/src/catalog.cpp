#include "genein/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "genein/normal_forms.hpp"

namespace genein {

namespace {

const double kAuto = std::numeric_limits<double>::quiet_NaN();
const double kS2 = std::sqrt(2.0);

using Sweeps = std::map<std::string, std::vector<double>>;

struct GridBlock {
  Params base;
  Sweeps sweeps;
};

struct Family {
  FamilySpec spec;
  Params defaults;  // NaN marks a value derived from the others (e.g. k)
  std::vector<GridBlock> grid;
  std::function<GEProblem(const Params&)> build;
  std::function<std::optional<bool>(const Params&)> flat;
  std::function<std::string(const Params&)> label;
  std::function<std::optional<Mat>(const Params&, const GEProblem&)> constraints;
};

[[noreturn]] void domain(const std::string& what) { throw Error(ErrorKind::Domain, what); }

double get(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw Error(ErrorKind::Input, "missing parameter " + name);
  return it->second;
}

int get_int(const Params& p, const std::string& name) {
  double v = get(p, name);
  if (std::isnan(v)) domain(name + " is unresolved");
  if (v != std::round(v)) domain(name + " must be an integer");
  return static_cast<int>(v);
}

int get_sign(const Params& p, const std::string& name) {
  double v = get(p, name);
  if (v != 1.0 && v != -1.0) domain(name + " must be -1 or 1");
  return static_cast<int>(v);
}

// Number of L1 blocks: explicit value checked against the maximum, or the
// maximum itself.
int blocks(const Params& p, int kmax) {
  if (std::isnan(get(p, "k"))) return std::max(kmax, 0);
  int k = get_int(p, "k");
  if (k < 0 || k > kmax) domain("k out of range");
  return k;
}

// a_1 ≥ … ≥ a_k > 0 from one scale.
std::vector<double> descending(int k, double a, const char* name) {
  if (k > 0 && !(a > 0)) domain(std::string(name) + " must be positive");
  std::vector<double> out;
  for (int i = 0; i < k; ++i) out.push_back(a * (k - i) / k);
  return out;
}

// diag(L1(0,a_1), …, L1(0,a_k), 0, …, 0) of the given size.
Mat skew_blocks(const std::vector<double>& a, int size) {
  Mat m = Mat::Zero(size, size);
  for (std::size_t i = 0; i < a.size(); ++i) m.block(2 * i, 2 * i, 2, 2) = block(BlockName::L1, {0.0, a[i]});
  return m;
}

Mat diag_metric(const std::vector<double>& d) {
  Mat g = Mat::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return g;
}

// Almost Abelian problem with X = e_n orthogonal to n.
GEProblem almost_abelian(const Mat& f, const Mat& gn, double gx, KForm h = {}) {
  const int m = static_cast<int>(f.rows());
  const int n = m + 1;
  Mat g = Mat::Zero(n, n);
  g.topLeftCorner(m, m) = gn;
  g(m, m) = gx;
  if (h.dim() == 0) h = KForm(n, 3);
  return make_problem(LieAlgebra::almost_abelian(f), ScalarProduct(g), h);
}

Mat lorentz_diag(int m) {
  std::vector<double> d(m, 1.0);
  d[0] = -1.0;
  return diag_metric(d);
}

KForm one_form(int n, const Vec& v) {
  KForm w(n, 1);
  for (int i = 0; i < n; ++i) w.set({i}, v(i));
  return w;
}

// (e^1 + e^3) ∧ e^2 ∧ ξ on a 4d algebra, with ξ given.
KForm e13_e2(int n, const Vec& xi) {
  Vec a = Vec::Zero(n);
  a(0) = 1;
  a(2) = 1;
  return wedge(wedge(one_form(n, a), basis_form(n, {2})), one_form(n, xi));
}

// Matrix of the 3 × 3 endomorphism in the four-dimensional almost Abelian
// cases, numbered 1..7.
Mat fourd_f(int c, const Params& p) {
  Mat f(3, 3);
  switch (c) {
    case 1:
      return skew_blocks({get(p, "a")}, 3);
    case 2:
      return block(BlockName::M3, {get(p, "sigma")});
    case 3: {
      const double al = get(p, "alpha"), a = get(p, "a");
      if (al == 0 && a == 0) domain("(alpha, a) must not both vanish");
      Mat m = Mat::Zero(3, 3);
      m.topLeftCorner(2, 2) = block(BlockName::L1, {al, std::sqrt(al * al + a * a / 2)});
      m(2, 2) = a;
      return m;
    }
    case 4: {
      const double e = get_sign(p, "eps_f"), v = get(p, "v");
      f << e / 2, e / 2, v, -e / 2, -e / 2, -v, v, v, 0;
      return f;
    }
    case 5:
      return block(BlockName::L3, {0.0});
    case 6: {
      const double a = get(p, "a");
      if (a == 0) domain("a must be non-zero");
      const double q = a * a / 2;
      f << 0, -1 - q, 0, 1 - q, 0, 1 - q, 0, 1 + q, 0;
      return f / kS2;
    }
    case 7:
      f << 0, -get(p, "a"), 0, get(p, "a"), 0, 0, get(p, "b1"), get(p, "b2"), 0;
      return f;
  }
  domain("unknown case");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + std::abs(b)); }

std::string fourd_label(int c, const Params& p) {
  switch (c) {
    case 1:
      return get(p, "a") != 0 ? "e(2)⊕ℝ" : "ℝ⁴";
    case 2: {
      double s = get(p, "sigma");
      return s > 0 ? "e(2)⊕ℝ" : s == 0 ? "A₄,₁" : "e(1,1)⊕ℝ";
    }
    case 3: {
      const double al = get(p, "alpha"), a = get(p, "a");
      if (a == 0) return "r'₃,₁⊕ℝ";
      // Rescale X so the real eigenvalue is positive and the complex pair
      // has imaginary part 1.
      const double b = std::sqrt(al * al + a * a / 2);
      const double sg = a > 0 ? 1.0 : -1.0;
      return "A₄,₆^{" + fmt(sg * a / b) + "," + fmt(sg * al / b) + "}";
    }
    case 4:
      return get(p, "v") != 0 ? "A₄,₁" : "h₃⊕ℝ";
    case 5:
      return "A₄,₁";
    case 6: {
      double a = get(p, "a");
      return near(std::abs(a), kS2) ? "h₃⊕ℝ" : "A₄,₁";
    }
    case 7:
      if (get(p, "a") != 0) return "e(2)⊕ℝ";
      if (get(p, "b1") != 0 || get(p, "b2") != 0) return "h₃⊕ℝ";
      return "ℝ⁴";
  }
  domain("unknown case");
}

// Rows killing δ on im(f) and on im(f)^♭, with n = span(e_1..e_{n-1}).
Mat image_constraints(const GEProblem& p) {
  const int n = p.dim();
  const int m = n - 1;
  Mat f(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) f(k, j) = p.algebra.c(k, m, j);
  Mat rows = Mat::Zero(0, 2 * n);
  if (sup_norm(f) == 0) return rows;
  Subspace im = Subspace::span(f);
  rows.resize(2 * im.dim(), 2 * n);
  rows.setZero();
  for (int c = 0; c < im.dim(); ++c) {
    Vec y = Vec::Zero(n);
    y.head(m) = im.basis().col(c);
    rows.row(2 * c).head(n) = y.transpose();
    rows.row(2 * c + 1).tail(n) = (p.metric.matrix() * y).transpose();
  }
  return rows;
}

// Row r with r·δ = Σ coefficients on δ(e_i) (vec) and δ(e^i) (cov).
struct RowBuilder {
  int n;
  std::vector<Vec> rows;
  void add(std::vector<std::pair<int, double>> vec, std::vector<std::pair<int, double>> cov = {}) {
    Vec r = Vec::Zero(2 * n);
    for (auto [i, v] : vec) r(i - 1) += v;
    for (auto [i, v] : cov) r(n + i - 1) += v;
    rows.push_back(r);
  }
  Mat matrix() const {
    Mat m(static_cast<int>(rows.size()), 2 * n);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<int>(i)) = rows[i].transpose();
    return m;
  }
};

std::vector<Bracket> so3_brackets(double ea, double b) {
  return {{1, 2, 3, ea}, {2, 3, 1, ea}, {3, 1, 2, ea}, {3, 4, 2, b}, {4, 2, 3, b}};
}

std::vector<Bracket> so21_brackets(double ea) { return {{1, 2, 3, ea}, {2, 3, 1, -ea}, {3, 1, 2, ea}}; }

GEProblem reductive(std::vector<Bracket> br, const std::vector<double>& metric, double a) {
  KForm h = a * basis_form(4, {1, 2, 3});
  return make_problem(new_lie_algebra(4, br), ScalarProduct::diagonal(metric), h);
}

// Constraints for so(3)⊕ℝ in the Riemannian and the timelike-X setting.
Mat so3_constraints(double b, int eps) {
  RowBuilder r{4, {}};
  if (b != 0) {
    for (int i : {2, 3}) {
      r.add({{i, 1}});
      r.add({}, {{i, 1}});
    }
    r.add({{1, 1}}, {{1, eps}});
  } else {
    for (int i : {1, 2, 3}) r.add({{i, 1}}, {{i, eps}});
  }
  return r.matrix();
}

const std::vector<double> kSweep = {-2, -1, 0, 1, 2};
const std::vector<double> kPos = {0.25, 0.5, 1, 2, 4};
const std::vector<double> kNonZero = {-2, -0.5, 0.5, 1, 2};
const std::vector<double> kSigns = {-1, 1};

std::vector<Family> make_families() {
  std::vector<Family> fs;

  // ---- four-dimensional Riemannian

  fs.push_back({{"riem.4d.i", {"m", "d"}, "|m| < 1/2; d any", "abelian, any metric and divergence"},
                {{"m", 0.2}, {"d", 0.5}},
                {{{}, {{"m", {-0.4, -0.2, 0, 0.2, 0.4}}, {"d", kSweep}}}},
                [](const Params& p) {
                  const double m = get(p, "m"), d = get(p, "d");
                  if (!(std::abs(m) < 0.5)) domain("|m| must be < 1/2");
                  Mat g = Mat::Identity(4, 4);
                  for (int i = 0; i + 1 < 4; ++i) g(i, i + 1) = g(i + 1, i) = m;
                  Divergence dl{Vec(4), Vec(4)};
                  dl.on_vectors << d, 2 * d, 3 * d, 4 * d;
                  dl.on_covectors << -d, d / 2, -d / 3, d / 4;
                  dl.on_vectors /= 4;
                  return make_problem(LieAlgebra(4), ScalarProduct(g), KForm(4, 3), dl);
                },
                [](const Params&) { return std::optional<bool>(true); },
                [](const Params&) { return std::string("ℝ⁴"); },
                [](const Params&, const GEProblem&) { return std::optional<Mat>(Mat::Zero(0, 8)); }});

  fs.push_back({{"riem.4d.ii", {"a", "d3", "d4", "D3", "D4"}, "a > 0; δ in span{e_3, e_4, e^3, e^4}",
                 "e(2)⊕ℝ, H = 0"},
                {{"a", 1}, {"d3", 0.3}, {"d4", -0.2}, {"D3", 0.5}, {"D4", 0.1}},
                {{{}, {{"a", kPos}, {"d3", kSweep}, {"d4", kSweep}, {"D3", kSweep}, {"D4", kSweep}}}},
                [](const Params& p) {
                  const double a = get(p, "a");
                  if (!(a > 0)) domain("a must be positive");
                  Divergence dl = Divergence::zero(4);
                  dl.on_vectors(2) = get(p, "d3");
                  dl.on_vectors(3) = get(p, "d4");
                  dl.on_covectors(2) = get(p, "D3");
                  dl.on_covectors(3) = get(p, "D4");
                  return make_problem(new_lie_algebra(4, {{3, 1, 2, a}, {3, 2, 1, -a}}), ScalarProduct::diagonal({1, 1, 1, 1}),
                                      KForm(4, 3), dl);
                },
                [](const Params&) { return std::optional<bool>(true); },
                [](const Params&) { return std::string("e(2)⊕ℝ"); },
                [](const Params&, const GEProblem&) {
                  RowBuilder r{4, {}};
                  for (int i : {1, 2}) {
                    r.add({{i, 1}});
                    r.add({}, {{i, 1}});
                  }
                  return std::optional<Mat>(r.matrix());
                }});

  fs.push_back(
      {{"riem.4d.iii", {"a", "b", "eps", "d1", "d2", "d3", "d4", "D4"},
        "a ≠ 0; eps = ±1; δ(e^i) = d_i, δ(e_i) = -eps d_i (d2 = d3 = 0 unless b = 0); δ(e_4) = d4, δ(e^4) = D4",
        "so(3)⊕ℝ with H = a e^123"},
       {{"a", 1}, {"b", 0.5}, {"eps", 1}, {"d1", 0.3}, {"d2", 0}, {"d3", 0}, {"d4", 0.2}, {"D4", -0.1}},
       {{{}, {{"a", kNonZero}, {"b", {-1, 0, 0.5, 1, 2}}, {"eps", kSigns}, {"d1", kSweep}, {"d4", kSweep}, {"D4", kSweep}}},
        {{{"b", 0}}, {{"d2", kSweep}, {"d3", kSweep}, {"eps", kSigns}}}},
       [](const Params& p) {
         const double a = get(p, "a"), b = get(p, "b");
         const int e = get_sign(p, "eps");
         if (a == 0) domain("a must be non-zero");
         const double d2 = get(p, "d2"), d3 = get(p, "d3");
         if (b != 0 && (d2 != 0 || d3 != 0)) domain("d2, d3 must vanish when b != 0");
         GEProblem pr = reductive(so3_brackets(e * a, b), {1, 1, 1, 1}, a);
         const double d[3] = {get(p, "d1"), d2, d3};
         for (int i = 0; i < 3; ++i) {
           pr.delta.on_covectors(i) = d[i];
           pr.delta.on_vectors(i) = -e * d[i];
         }
         pr.delta.on_vectors(3) = get(p, "d4");
         pr.delta.on_covectors(3) = get(p, "D4");
         validate(pr);
         return pr;
       },
       [](const Params&) { return std::optional<bool>(); },
       [](const Params&) { return std::string("so(3)⊕ℝ"); },
       [](const Params& p, const GEProblem&) { return std::optional<Mat>(so3_constraints(get(p, "b"), get_sign(p, "eps"))); }});

  // ---- almost Abelian, H = 0

  fs.push_back({{"aa.H0.riem", {"n", "k", "a", "eps"}, "n ≥ 3; 0 ≤ k ≤ ⌊(n-1)/2⌋; a > 0 if k > 0; eps = g(X,X) = ±1",
                 "positive definite ideal, f = diag(L1(0,a_1), …, 0)"},
                {{"n", 5}, {"k", kAuto}, {"a", 1}, {"eps", -1}},
                {{{}, {{"n", {3, 4, 5, 6, 7}}, {"a", {0.5, 1, 2, 3, 5}}, {"eps", kSigns}}}, {{{"n", 7}}, {{"k", {0, 1, 2, 3}}}}},
                [](const Params& p) {
                  const int n = get_int(p, "n");
                  if (n < 3) domain("n must be at least 3");
                  const int k = blocks(p, (n - 1) / 2);
                  Mat f = skew_blocks(descending(k, get(p, "a"), "a"), n - 1);
                  return almost_abelian(f, Mat::Identity(n - 1, n - 1), get_sign(p, "eps"));
                },
                [](const Params&) { return std::optional<bool>(true); }, nullptr,
                [](const Params&, const GEProblem& pr) { return std::optional<Mat>(image_constraints(pr)); }});

  fs.push_back({{"aa.H0.lor.i", {"rho"}, "rho any (n = 3)", "f = [[0, ρ], [ρ, 0]]"},
                {{"rho", 0.7}},
                {{{}, {{"rho", kSweep}}}},
                [](const Params& p) {
                  Mat f(2, 2);
                  f << 0, get(p, "rho"), get(p, "rho"), 0;
                  return almost_abelian(f, lorentz_diag(2), 1);
                },
                [](const Params&) { return std::optional<bool>(true); }, nullptr,
                [](const Params&, const GEProblem& pr) { return std::optional<Mat>(image_constraints(pr)); }});

  fs.push_back({{"aa.H0.lor.ii", {"n", "sigma", "k", "a"}, "n ≥ 4 even; 0 ≤ k ≤ (n-4)/2; a > 0 if k > 0",
                 "f = diag(M3(σ), L1(0,a_1), …, 0)"},
                {{"n", 6}, {"sigma", 0.3}, {"k", kAuto}, {"a", 2}},
                {{{}, {{"n", {4, 6, 8}}, {"sigma", kSweep}, {"a", kPos}}}},
                [](const Params& p) {
                  const int n = get_int(p, "n");
                  if (n < 4 || n % 2) domain("n must be even and at least 4");
                  const int k = blocks(p, (n - 4) / 2);
                  Mat f = Mat::Zero(n - 1, n - 1);
                  f.topLeftCorner(3, 3) = block(BlockName::M3, {get(p, "sigma")});
                  f.bottomRightCorner(n - 4, n - 4) = skew_blocks(descending(k, get(p, "a"), "a"), n - 4);
                  return almost_abelian(f, lorentz_diag(n - 1), 1);
                },
                [](const Params&) { return std::optional<bool>(true); }, nullptr,
                [](const Params&, const GEProblem& pr) { return std::optional<Mat>(image_constraints(pr)); }});

  fs.push_back({{"aa.H0.lor.iii", {"n", "sigma", "tau", "k", "a"}, "n ≥ 5 odd; tau ≥ 0; 0 ≤ k ≤ (n-5)/2; a > 0 if k > 0",
                 "f = diag(M4(σ,τ), L1(0,a_1), …, 0)"},
                {{"n", 5}, {"sigma", 0.3}, {"tau", 0.5}, {"k", kAuto}, {"a", 2}},
                {{{}, {{"n", {5, 7, 9}}, {"sigma", kSweep}, {"tau", {0, 0.5, 1, 2, 3}}}}, {{{"n", 7}}, {{"a", kPos}}}},
                [](const Params& p) {
                  const int n = get_int(p, "n");
                  if (n < 5 || n % 2 == 0) domain("n must be odd and at least 5");
                  const double tau = get(p, "tau");
                  if (!(tau >= 0)) domain("tau must be non-negative");
                  const int k = blocks(p, (n - 5) / 2);
                  Mat f = Mat::Zero(n - 1, n - 1);
                  f.topLeftCorner(4, 4) = block(BlockName::M4, {get(p, "sigma"), tau});
                  f.bottomRightCorner(n - 5, n - 5) = skew_blocks(descending(k, get(p, "a"), "a"), n - 5);
                  return almost_abelian(f, lorentz_diag(n - 1), 1);
                },
                [](const Params&) { return std::optional<bool>(true); }, nullptr,
                [](const Params&, const GEProblem& pr) { return std::optional<Mat>(image_constraints(pr)); }});

  fs.push_back(
      {{"aa.H0.lor.iv", {"n", "k", "alpha", "a", "b", "c"},
        "n ≥ 3; 0 ≤ k ≤ ⌊(n-3)/2⌋, s = n-3-2k; a_i = a, b_i descending from b > 0, c_j = c - (j-1)/2; β > 0",
        "f = diag(L1(α,β), L1(a_i,b_i), c_j), β = √(α² + Σa_i² + Σc_j²/2)"},
       {{"n", 5}, {"k", kAuto}, {"alpha", 0.3}, {"a", 0.5}, {"b", 1.2}, {"c", 0.7}},
       {{{}, {{"n", {3, 4, 5, 6, 7}}, {"alpha", {-1, -0.5, 0, 0.5, 1}}, {"a", kSweep}, {"b", kPos}}},
        {{{"k", 0}}, {{"c", kSweep}}},
        {{{"n", 6}}, {{"c", kSweep}}}},
       [](const Params& p) {
         const int n = get_int(p, "n");
         if (n < 3) domain("n must be at least 3");
         const int k = blocks(p, (n - 3) / 2);
         const int s = n - 3 - 2 * k;
         const double al = get(p, "alpha"), a = get(p, "a");
         std::vector<double> bs = descending(k, get(p, "b"), "b");
         double beta2 = al * al;
         Mat f = Mat::Zero(n - 1, n - 1);
         for (int i = 0; i < k; ++i) {
           f.block(2 + 2 * i, 2 + 2 * i, 2, 2) = block(BlockName::L1, {a, bs[i]});
           beta2 += a * a;
         }
         for (int j = 0; j < s; ++j) {
           const double cj = get(p, "c") - 0.5 * j;
           f(2 + 2 * k + j, 2 + 2 * k + j) = cj;
           beta2 += cj * cj / 2;
         }
         if (!(beta2 > 0)) domain("beta must be positive");
         f.topLeftCorner(2, 2) = block(BlockName::L1, {al, std::sqrt(beta2)});
         return almost_abelian(f, lorentz_diag(n - 1), 1);
       },
       [](const Params&) { return std::optional<bool>(false); }, nullptr, nullptr});

  fs.push_back({{"aa.H0.lor.v", {"n", "eps_f", "v", "k", "a"}, "n ≥ 3; eps_f = ±1; v_i = v/i; 0 ≤ k ≤ ⌊(n-3)/2⌋; a > 0 if k > 0",
                 "f with the null block ε/2 and coupling vector v"},
                {{"n", 5}, {"eps_f", 1}, {"v", 0.4}, {"k", kAuto}, {"a", 1.5}},
                {{{}, {{"n", {3, 4, 5, 6, 7}}, {"eps_f", kSigns}, {"v", kSweep}, {"a", kPos}}}},
                [](const Params& p) {
                  const int n = get_int(p, "n");
                  if (n < 3) domain("n must be at least 3");
                  const double e = get_sign(p, "eps_f");
                  const int r = n - 3;
                  const int k = blocks(p, r / 2);
                  Vec v(r);
                  for (int i = 0; i < r; ++i) v(i) = get(p, "v") / (i + 1);
                  Mat f = Mat::Zero(n - 1, n - 1);
                  f(0, 0) = f(0, 1) = e / 2;
                  f(1, 0) = f(1, 1) = -e / 2;
                  f.block(0, 2, 1, r) = v.transpose();
                  f.block(1, 2, 1, r) = -v.transpose();
                  f.block(2, 0, r, 1) = v;
                  f.block(2, 1, r, 1) = v;
                  f.bottomRightCorner(r, r) = skew_blocks(descending(k, get(p, "a"), "a"), r);
                  return almost_abelian(f, lorentz_diag(n - 1), 1);
                },
                [](const Params&) { return std::optional<bool>(true); }, nullptr, nullptr});

  fs.push_back({{"aa.H0.lor.vi", {"n", "v", "k", "a"}, "n ≥ 4; v_i = v/i; 0 ≤ k ≤ ⌊(n-4)/2⌋; a > 0 if k > 0",
                 "f = L3(0) coupled to v"},
                {{"n", 5}, {"v", 0.4}, {"k", kAuto}, {"a", 0.9}},
                {{{}, {{"n", {4, 5, 6, 7, 8}}, {"v", kSweep}, {"a", kPos}}}},
                [](const Params& p) {
                  const int n = get_int(p, "n");
                  if (n < 4) domain("n must be at least 4");
                  const int r = n - 4;
                  const int k = blocks(p, r / 2);
                  Vec v(r);
                  for (int i = 0; i < r; ++i) v(i) = get(p, "v") / (i + 1);
                  Mat f = Mat::Zero(n - 1, n - 1);
                  f.topLeftCorner(3, 3) = block(BlockName::L3, {0.0});
                  f.block(0, 3, 1, r) = v.transpose();
                  f.block(2, 3, 1, r) = -v.transpose();
                  f.block(3, 0, r, 1) = v;
                  f.block(3, 2, r, 1) = v;
                  f.bottomRightCorner(r, r) = skew_blocks(descending(k, get(p, "a"), "a"), r);
                  return almost_abelian(f, lorentz_diag(n - 1), 1);
                },
                [](const Params&) { return std::optional<bool>(false); }, nullptr, nullptr});

  // ---- almost Abelian, H ≠ 0

  fs.push_back(
      {{"aa.Hneq0.4th", {"n", "k", "b", "beta", "nu", "t1", "t2", "u", "c"},
        "n ≥ 4; 0 ≤ k ≤ ⌊(n-4)/2⌋; c > 0 if k > 0; H ≠ 0; u_i = u/i, β_i = beta/i, ν_i = nu(-1)^(i+1)/i on U2; "
        "τ1 = t1 Σ Kähler forms of U1, τ2 = t2 Σ e^{2j-1,2j} on U2; ρ̃ is derived",
        "null-type f with ρ̃ = ½(b² + |β|² + |ν|² + |τ1|² + |τ2|²)"},
       {{"n", 5}, {"k", 0}, {"b", 1}, {"beta", 0}, {"nu", 0}, {"t1", 0}, {"t2", 0}, {"u", 0}, {"c", 1}},
       {{{}, {{"n", {4, 5, 6, 7}}, {"b", {-2, -1, 0.5, 1, 2}}, {"u", kSweep}}},
        {{{"b", 0.5}}, {{"beta", kSweep}, {"nu", kSweep}}},
        {{{"n", 6}, {"b", 0}, {"t2", 0.6}}, {{"t2", kNonZero}}},
        {{{"n", 7}, {"k", 1}, {"t1", 0.6}}, {{"t1", kNonZero}, {"c", kPos}, {"u", kSweep}}}},
       [](const Params& p) {
         const int n = get_int(p, "n");
         if (n < 4) domain("n must be at least 4");
         const int k = get_int(p, "k");
         if (k < 0 || k > (n - 4) / 2) domain("k out of range");
         const int u1 = 3, u2 = 3 + 2 * k, m = n - 1, X = n - 1;
         const int d2 = m - u2;
         const double b = get(p, "b"), t1 = get(p, "t1"), t2 = get(p, "t2");
         if (d2 == 0 && (get(p, "beta") != 0 || get(p, "nu") != 0)) domain("beta, nu need a non-empty U2");
         if (d2 < 2 && t2 != 0) domain("t2 needs dim U2 ≥ 2");
         if (k == 0 && t1 != 0) domain("t1 needs k ≥ 1");
         Vec beta = Vec::Zero(n), nu = Vec::Zero(n);
         for (int i = 0; i < d2; ++i) {
           beta(u2 + i) = get(p, "beta") / (i + 1);
           nu(u2 + i) = get(p, "nu") * (i % 2 ? -1.0 : 1.0) / (i + 1);
         }
         KForm tau(n, 2);
         double rho = b * b + beta.squaredNorm() + nu.squaredNorm();
         for (int i = 0; i < k; ++i) {
           tau.set({u1 + 2 * i, u1 + 2 * i + 1}, t1);
           rho += t1 * t1;
         }
         for (int j = 0; j + 1 < d2; j += 2) {
           tau.set({u2 + j, u2 + j + 1}, t2);
           rho += t2 * t2;
         }
         rho /= 2;
         Vec xf = Vec::Unit(n, X);
         Vec e13 = Vec::Zero(n);
         e13(0) = e13(2) = 1;
         KForm inner = -1.0 * wedge(basis_form(n, {2}), one_form(n, nu + b * xf)) + wedge(one_form(n, beta), one_form(n, xf)) + tau;
         KForm h = wedge(one_form(n, e13), inner);
         if (h.max_abs() == 0) domain("at least one of b, beta, nu, t1, t2 must be non-zero");
         std::vector<double> cs = descending(k, get(p, "c"), "c");
         const int r = m - 3;
         Vec u(r);
         for (int i = 0; i < r; ++i) u(i) = get(p, "u") / (i + 1);
         Mat f = Mat::Zero(m, m);
         f(0, 1) = -(1 + rho) / kS2;
         f(1, 0) = f(1, 2) = (1 - rho) / kS2;
         f(2, 1) = (1 + rho) / kS2;
         f.block(0, 3, 1, r) = u.transpose();
         f.block(2, 3, 1, r) = -u.transpose();
         f.block(3, 0, r, 1) = u;
         f.block(3, 2, r, 1) = u;
         f.bottomRightCorner(r, r) = skew_blocks(cs, r);
         return almost_abelian(f, lorentz_diag(m), 1, h);
       },
       [](const Params&) { return std::optional<bool>(); }, nullptr, nullptr});

  // ---- four-dimensional almost Abelian, Lorentzian

  struct FourD {
    const char* id;
    int c;
    std::vector<std::string> names;
    const char* dom;
    Params defaults;
    std::vector<GridBlock> grid;
  };
  const std::vector<FourD> four = {
      {"aa.4d.i", 1, {"a"}, "a any", {{"a", 1}}, {{{}, {{"a", kSweep}}}}},
      {"aa.4d.ii", 2, {"sigma"}, "sigma any", {{"sigma", 0.5}}, {{{}, {{"sigma", kSweep}}}}},
      {"aa.4d.iii", 3, {"alpha", "a"}, "(alpha, a) ≠ (0, 0)", {{"alpha", 0.3}, {"a", 0.8}},
       {{{}, {{"alpha", kSweep}, {"a", kSweep}}}}},
      {"aa.4d.iv", 4, {"eps_f", "v"}, "eps_f = ±1; v any", {{"eps_f", 1}, {"v", 0.3}},
       {{{}, {{"eps_f", kSigns}, {"v", kSweep}}}, {{{"eps_f", -1}}, {{"v", kSweep}}}}},
      {"aa.4d.v", 5, {}, "no parameters", {}, {{{}, {}}}},
      {"aa.4d.vi", 6, {"a"}, "a ≠ 0", {{"a", 1}}, {{{}, {{"a", {-2, -kS2, 0.5, kS2, 3}}}}}},
      {"aa.4d.vii", 7, {"a", "b1", "b2"}, "a, b1, b2 any", {{"a", 1}, {"b1", 0.5}, {"b2", -0.3}},
       {{{}, {{"a", kSweep}, {"b1", kSweep}, {"b2", kSweep}}}}},
  };
  for (const auto& d : four) {
    const int c = d.c;
    Family fam;
    fam.spec = {d.id, d.names, d.dom, "four-dimensional almost Abelian, case " + std::to_string(c)};
    fam.defaults = d.defaults;
    fam.grid = d.grid;
    fam.build = [c](const Params& p) {
      Mat f = fourd_f(c, p);
      if (c == 1) return almost_abelian(f, Mat::Identity(3, 3), -1);
      if (c == 7) {
        Mat g = Mat::Zero(4, 4);
        g(0, 0) = g(1, 1) = 1;
        g(2, 3) = g(3, 2) = 1;
        return make_problem(LieAlgebra::almost_abelian(f), ScalarProduct(g), KForm(4, 3));
      }
      KForm h;
      if (c == 6) h = get(p, "a") * e13_e2(4, Vec::Unit(4, 3));
      return almost_abelian(f, lorentz_diag(3), 1, h);
    };
    fam.flat = [c](const Params&) -> std::optional<bool> {
      switch (c) {
        case 1: case 2: case 4: case 7: return true;
        case 3: case 5: return false;
        default: return std::nullopt;
      }
    };
    fam.label = [c](const Params& p) { return fourd_label(c, p); };
    if (c == 1 || c == 2)
      fam.constraints = [](const Params&, const GEProblem& pr) { return std::optional<Mat>(image_constraints(pr)); };
    fs.push_back(fam);
  }

  fs.push_back({{"aa.4d.Hneq0", {"b"}, "b ≠ 0", "four-dimensional, H = b (e^1 + e^3) ∧ e^24"},
                {{"b", 1}},
                {{{}, {{"b", {-2, -1, 0.5, kS2, 3}}}}},
                [](const Params& p) {
                  const double b = get(p, "b");
                  if (b == 0) domain("b must be non-zero");
                  Params q{{"a", b}};
                  return almost_abelian(fourd_f(6, q), lorentz_diag(3), 1, b * e13_e2(4, Vec::Unit(4, 3)));
                },
                [](const Params&) { return std::optional<bool>(); },
                [](const Params& p) { return fourd_label(6, Params{{"a", get(p, "b")}}); }, nullptr});

  // ---- degenerate ideal

  fs.push_back({{"aa.deg", {"n", "k", "c", "alpha"},
                 "n ≥ 3; 0 ≤ k ≤ ⌊(n-2)/2⌋; c > 0 if k > 0; α_i = alpha/i; Witt basis (e_1..e_{n-2}, Y, X)",
                 "degenerate ideal, f = (diag(L1(0,c_i), 0); α 0)"},
                {{"n", 5}, {"k", kAuto}, {"c", 1.3}, {"alpha", 0.5}},
                {{{}, {{"n", {3, 4, 5, 6, 7}}, {"c", kPos}, {"alpha", kSweep}}}},
                [](const Params& p) {
                  const int n = get_int(p, "n");
                  if (n < 3) domain("n must be at least 3");
                  const int u = n - 2;
                  const int k = blocks(p, u / 2);
                  Mat f = Mat::Zero(n - 1, n - 1);
                  f.topLeftCorner(u, u) = skew_blocks(descending(k, get(p, "c"), "c"), u);
                  for (int i = 0; i < u; ++i) f(u, i) = get(p, "alpha") / (i + 1);
                  Mat g = Mat::Zero(n, n);
                  g.topLeftCorner(u, u) = Mat::Identity(u, u);
                  g(u, u + 1) = g(u + 1, u) = 1;
                  return make_problem(LieAlgebra::almost_abelian(f), ScalarProduct(g), KForm(n, 3));
                },
                [](const Params&) { return std::optional<bool>(true); }, nullptr, nullptr});

  // ---- reductive

  fs.push_back({{"red.so3", {"a", "b", "eps"}, "a ≠ 0; eps = ±1", "so(3)⊕ℝ, Riemannian so(3), timelike complement"},
                {{"a", 1}, {"b", 0.5}, {"eps", 1}},
                {{{}, {{"a", kNonZero}, {"b", kSweep}, {"eps", kSigns}}}},
                [](const Params& p) {
                  const double a = get(p, "a");
                  if (a == 0) domain("a must be non-zero");
                  return reductive(so3_brackets(get_sign(p, "eps") * a, get(p, "b")), {1, 1, 1, -1}, a);
                },
                [](const Params&) { return std::optional<bool>(); },
                [](const Params&) { return std::string("so(3)⊕ℝ"); },
                [](const Params& p, const GEProblem&) { return std::optional<Mat>(so3_constraints(get(p, "b"), get_sign(p, "eps"))); }});

  const std::vector<double> lor4 = {-1, 1, 1, 1};
  fs.push_back({{"red.so21.alpha", {"a", "b", "eps"}, "a ≠ 0; eps = ±1", "so(2,1)⊕ℝ, [e_4,e_2] = b e_3"},
                {{"a", 1}, {"b", 0.5}, {"eps", 1}},
                {{{}, {{"a", kNonZero}, {"b", kSweep}, {"eps", kSigns}}}},
                [lor4](const Params& p) {
                  const double a = get(p, "a"), b = get(p, "b");
                  if (a == 0) domain("a must be non-zero");
                  auto br = so21_brackets(get_sign(p, "eps") * a);
                  br.push_back({4, 2, 3, b});
                  br.push_back({4, 3, 2, -b});
                  return reductive(br, lor4, a);
                },
                [](const Params&) { return std::optional<bool>(); },
                [](const Params&) { return std::string("so(2,1)⊕ℝ"); },
                [](const Params& p, const GEProblem&) {
                  const int e = get_sign(p, "eps");
                  RowBuilder r{4, {}};
                  if (get(p, "b") != 0) {
                    for (int i : {2, 3}) {
                      r.add({{i, 1}});
                      r.add({}, {{i, 1}});
                    }
                  } else {
                    for (int i : {2, 3}) r.add({{i, 1}}, {{i, e}});
                  }
                  r.add({{1, 1}}, {{1, -e}});
                  return std::optional<Mat>(r.matrix());
                }});

  fs.push_back({{"red.so21.beta", {"a", "b", "eps"}, "a ≠ 0; b ≠ 0; eps = ±1", "so(2,1)⊕ℝ, [e_4,e_1] = b e_2"},
                {{"a", 1}, {"b", 0.5}, {"eps", 1}},
                {{{}, {{"a", kNonZero}, {"b", kNonZero}, {"eps", kSigns}}}},
                [lor4](const Params& p) {
                  const double a = get(p, "a"), b = get(p, "b");
                  if (a == 0 || b == 0) domain("a and b must be non-zero");
                  auto br = so21_brackets(get_sign(p, "eps") * a);
                  br.push_back({4, 1, 2, b});
                  br.push_back({4, 2, 1, b});
                  return reductive(br, lor4, a);
                },
                [](const Params&) { return std::optional<bool>(); },
                [](const Params&) { return std::string("so(2,1)⊕ℝ"); },
                [](const Params& p, const GEProblem&) {
                  RowBuilder r{4, {}};
                  for (int i : {1, 2}) {
                    r.add({{i, 1}});
                    r.add({}, {{i, 1}});
                  }
                  r.add({{3, 1}}, {{3, get_sign(p, "eps")}});
                  return std::optional<Mat>(r.matrix());
                }});

  fs.push_back({{"red.so21.gamma", {"a", "eps"}, "a ≠ 0; eps = ±1", "so(2,1)⊕ℝ, [e_4,e_2] = e_1 + e_3"},
                {{"a", 1}, {"eps", 1}},
                {{{}, {{"a", kNonZero}, {"eps", kSigns}}}, {{{"eps", -1}}, {{"a", kNonZero}}}},
                [lor4](const Params& p) {
                  const double a = get(p, "a");
                  if (a == 0) domain("a must be non-zero");
                  auto br = so21_brackets(get_sign(p, "eps") * a);
                  for (Bracket b : std::vector<Bracket>{{4, 1, 2, 1}, {4, 2, 1, 1}, {4, 2, 3, 1}, {4, 3, 2, -1}}) br.push_back(b);
                  return reductive(br, lor4, a);
                },
                [](const Params&) { return std::optional<bool>(); },
                [](const Params&) { return std::string("so(2,1)⊕ℝ"); },
                [](const Params& p, const GEProblem&) {
                  RowBuilder r{4, {}};
                  r.add({{2, 1}});
                  r.add({}, {{2, 1}});
                  r.add({{3, 1}, {1, 1}});
                  r.add({}, {{3, 1}, {1, -1}});
                  r.add({{1, 1}}, {{1, -get_sign(p, "eps")}});
                  return std::optional<Mat>(r.matrix());
                }});

  // ---- almost Heisenberg

  fs.push_back({{"heis.4d", {"lambda", "b", "f", "b1", "sign"}, "lambda ≠ 0; sign = ±1",
                 "null n', H = b1 e^23 ∧ X^♭"},
                {{"lambda", 1}, {"b", 0.3}, {"f", 0.4}, {"b1", 0.5}, {"sign", 1}},
                {{{}, {{"lambda", kNonZero}, {"b", kSweep}, {"f", kSweep}, {"b1", kSweep}, {"sign", kSigns}}}},
                [](const Params& p) {
                  const double lam = get(p, "lambda"), fv = get(p, "f"), b1 = get(p, "b1");
                  if (lam == 0) domain("lambda must be non-zero");
                  const double s = get_sign(p, "sign") * std::sqrt(fv * fv + b1 * b1);
                  std::vector<Bracket> br = {{2, 3, 1, lam}, {4, 2, 1, get(p, "b")}, {4, 2, 3, fv}, {4, 3, 1, s}};
                  Mat g = Mat::Zero(4, 4);
                  g(0, 1) = g(1, 0) = 1;
                  g(2, 2) = g(3, 3) = 1;
                  ScalarProduct sp(g);
                  // X^♭ for X = e_4
                  KForm h = b1 * wedge(basis_form(4, {2, 3}), one_form(4, sp.flat(Vec::Unit(4, 3))));
                  return make_problem(new_lie_algebra(4, br), sp, h);
                },
                [](const Params&) { return std::optional<bool>(); }, nullptr, nullptr});

  // ---- examples

  fs.push_back({{"ex.ab32", {}, "no parameters", "ℝ⁵ of signature (3,2) with H = e^1 ∧ (e^23 + e^24 + e^35 + e^45)"},
                {},
                {{{}, {}}},
                [](const Params&) {
                  KForm h = basis_form(5, {1, 2, 3}) + basis_form(5, {1, 2, 4}) + basis_form(5, {1, 3, 5}) + basis_form(5, {1, 4, 5});
                  return make_problem(LieAlgebra(5), ScalarProduct::diagonal({1, 1, 1, -1, -1}), h);
                },
                [](const Params&) { return std::optional<bool>(true); }, nullptr, nullptr});

  fs.push_back({{"ex.aa5d", {}, "no parameters", "five-dimensional almost Abelian with second-type f^S"},
                {},
                {{{}, {}}},
                [](const Params&) {
                  Mat f(4, 4);
                  f << 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, -1, -1;
                  KForm h = kS2 * (basis_form(5, {1, 3, 5}) + basis_form(5, {1, 4, 5}) - basis_form(5, {2, 3, 5}) +
                                   basis_form(5, {2, 4, 5}));
                  return almost_abelian(f, lorentz_diag(4), 1, h);
                },
                [](const Params&) { return std::optional<bool>(); }, nullptr, nullptr});

  // ---- signature (2,2)

  {
    Family fam;
    fam.spec = {"sig.n22",
                {"case", "eps", "sigma", "alpha", "a", "eps_f", "v"},
                "case ∈ {2..6} selects the four-dimensional Lorentzian case; eps = ±1; other parameters as in that case",
                "signature (2,2), g(e_1,e_1) = -g(e_2,e_2) = -g(e_3,e_3) = -ε"};
    fam.defaults = {{"case", 2}, {"eps", 1}, {"sigma", 0.4}, {"alpha", 0.3}, {"a", 0.8}, {"eps_f", 1}, {"v", 0.3}};
    for (double e : kSigns) {
      fam.grid.push_back({{{"case", 2}, {"eps", e}}, {{"sigma", kSweep}}});
      fam.grid.push_back({{{"case", 3}, {"eps", e}}, {{"alpha", kSweep}, {"a", {-1, -0.5, 0.5, 0.8, 2}}}});
      fam.grid.push_back({{{"case", 4}, {"eps", e}}, {{"eps_f", kSigns}, {"v", kSweep}}});
      fam.grid.push_back({{{"case", 5}, {"eps", e}}, {}});
      fam.grid.push_back({{{"case", 6}, {"eps", e}}, {{"a", {-2, -1, 0.5, kS2, 3}}}});
    }
    fam.build = [](const Params& p) {
      const int c = get_int(p, "case");
      if (c < 2 || c > 6) domain("case must be in 2..6");
      const double e = get_sign(p, "eps");
      Mat f = fourd_f(c, p);
      KForm h;
      if (c == 6) h = get(p, "a") * e13_e2(4, -e * Vec::Unit(4, 3));
      return almost_abelian(f, diag_metric({-e, e, e}), -e, h);
    };
    fam.flat = [](const Params&) { return std::optional<bool>(); };
    fam.label = [](const Params& p) { return fourd_label(get_int(p, "case"), p); };
    fs.push_back(fam);
  }

  return fs;
}

const std::vector<Family>& registry() {
  static const std::vector<Family> fs = make_families();
  return fs;
}

const Family& find_family(const std::string& id) {
  for (const auto& f : registry())
    if (f.spec.family_id == id) return f;
  // Greek suffix aliases.
  static const std::map<std::string, std::string> alias = {
      {"red.so21.α", "red.so21.alpha"}, {"red.so21.β", "red.so21.beta"}, {"red.so21.γ", "red.so21.gamma"}};
  auto it = alias.find(id);
  if (it != alias.end()) return find_family(it->second);
  throw Error(ErrorKind::UnknownName, "unknown family: " + id);
}

}  // namespace

const std::vector<FamilySpec>& families() {
  static const std::vector<FamilySpec> specs = [] {
    std::vector<FamilySpec> s;
    for (const auto& f : registry()) s.push_back(f.spec);
    return s;
  }();
  return specs;
}

const FamilySpec& family(const std::string& id) { return find_family(id).spec; }

Params resolved_params(const std::string& id, const Params& params) {
  const Family& f = find_family(id);
  Params p = f.defaults;
  for (const auto& [k, v] : params) {
    if (k == "rho" && id == "aa.Hneq0.4th") domain("rho is derived from the other parameters and cannot be supplied");
    if (!p.count(k)) throw Error(ErrorKind::Input, "family " + f.spec.family_id + " has no parameter " + k);
    if (!std::isfinite(v) && !std::isnan(p[k])) domain("parameter " + k + " must be finite");
    p[k] = v;
  }
  return p;
}

GEProblem instantiate_family(const std::string& id, const Params& params) {
  return find_family(id).build(resolved_params(id, params));
}

std::vector<Params> default_grid(const std::string& id) {
  const Family& f = find_family(id);
  std::vector<Params> out;
  // NaN entries rule out comparing maps directly.
  std::set<std::string> seen;
  auto push = [&](Params p) {
    std::string key;
    for (const auto& [k, v] : p) key += k + "=" + (std::isnan(v) ? std::string("auto") : fmt(v)) + ";";
    if (seen.insert(key).second) out.push_back(std::move(p));
  };
  for (const auto& blk : f.grid) {
    Params base = f.defaults;
    for (const auto& [k, v] : blk.base) base[k] = v;
    push(base);
    for (const auto& [k, vals] : blk.sweeps)
      for (double v : vals) {
        Params q = base;
        q[k] = v;
        push(q);
      }
  }
  return out;
}

std::optional<bool> expected_flat(const std::string& id, const Params& params) {
  const Family& f = find_family(id);
  if (!f.flat) return std::nullopt;
  return f.flat(resolved_params(id, params));
}

std::string isomorphism_label(const std::string& id, const Params& params) {
  const Family& f = find_family(id);
  if (!f.label) throw Error(ErrorKind::UnknownName, "family " + f.spec.family_id + " has no recorded isomorphism labels");
  Params p = resolved_params(id, params);
  f.build(p);  // domain checks
  return f.label(p);
}

std::optional<Mat> divergence_constraints(const std::string& id, const Params& params) {
  const Family& f = find_family(id);
  if (!f.constraints) return std::nullopt;
  Params p = resolved_params(id, params);
  return f.constraints(p, f.build(p));
}

// ------------------------------------------------------------------ table

const char* ge_flag_symbol(GEFlag f) {
  switch (f) {
    case GEFlag::DoubleCheck: return "✓✓";
    case GEFlag::SingleCheck: return "✓";
    case GEFlag::Cross: return "×";
    case GEFlag::Dash: return "-";
  }
  return "?";
}

namespace {

Mat span_cols(const std::vector<Vec>& cols) {
  Mat m(4, static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) m.col(static_cast<int>(i)) = cols[i];
  return m;
}

Vec e(int i) { return Vec::Unit(4, i - 1); }

struct RowDef {
  const char* name;
  const char* key;
  Params params;
  std::function<std::vector<DiffTerm>(const Params&)> diff;
  bool unimodular;
  std::vector<IdealWitness> ideals;
  const char* commutator;
  GEFlag flag;
  const char* condition;
  std::function<bool(const Params&)> predicate;
};

std::vector<RowDef> rows() {
  using D = std::vector<DiffTerm>;
  auto fixed = [](D d) { return [d](const Params&) { return d; }; };
  const IdealWitness r3_123{"ℝ³", span_cols({e(1), e(2), e(3)})};
  const IdealWitness r3_124{"ℝ³", span_cols({e(1), e(2), e(4)})};
  const IdealWitness h3_123{"h₃", span_cols({e(1), e(2), e(3)})};
  const auto always = [](const Params&) { return true; };
  using G = GEFlag;
  std::vector<RowDef> t = {
      // unimodular
      {"so(3)⊕ℝ", "so3_R", {}, fixed({{1, 2, 3, 1}, {2, 1, 3, -1}, {3, 1, 2, 1}}), true,
       {{"so(3)", span_cols({e(1), e(2), e(3)})}}, "so(3)", G::DoubleCheck, "", always},
      {"so(2,1)⊕ℝ", "so21_R", {}, fixed({{1, 2, 3, 1}, {2, 1, 3, 1}, {3, 1, 2, 1}}), true,
       {{"so(2,1)", span_cols({e(1), e(2), e(3)})}}, "so(2,1)", G::DoubleCheck, "", always},
      {"e(2)⊕ℝ", "e2_R", {}, fixed({{1, 2, 3, 1}, {2, 1, 3, -1}}), true, {r3_124, {"e(2)", span_cols({e(1), e(2), e(3)})}},
       "ℝ²", G::DoubleCheck, "", always},
      {"e(1,1)⊕ℝ", "e11_R", {}, fixed({{1, 2, 3, 1}, {2, 1, 3, 1}}), true, {r3_124, {"e(1,1)", span_cols({e(1), e(2), e(3)})}},
       "ℝ²", G::DoubleCheck, "", always},
      {"h₃⊕ℝ", "h3_R", {}, fixed({{1, 2, 3, 1}}), true, {r3_124, h3_123}, "ℝ", G::SingleCheck, "", always},
      {"ℝ⁴", "R4", {}, fixed({}), true, {r3_123}, "{0}", G::DoubleCheck, "", always},
      {"A₄,₁", "A41", {}, fixed({{1, 2, 4, 1}, {2, 3, 4, 1}}), true, {r3_123, {"h₃", span_cols({e(1), e(2), e(4)})}}, "ℝ²",
       G::SingleCheck, "", always},
      {"A₄,₂^{-2}", "A42_m2", {}, fixed({{1, 1, 4, -2}, {2, 2, 4, 1}, {2, 3, 4, 1}, {3, 3, 4, 1}}), true, {r3_123}, "ℝ³",
       G::Cross, "", always},
      {"A₄,₅^{α,-(α+1)}", "A45_neg", {{"alpha", -0.75}},
       [](const Params& p) {
         const double a = get(p, "alpha");
         if (!(a > -1 && a <= -0.5)) domain("alpha must lie in (-1, -1/2]");
         return D{{1, 1, 4, 1}, {2, 2, 4, a}, {3, 3, 4, -(a + 1)}};
       },
       true, {r3_123}, "ℝ³", G::Cross, "", always},
      {"A₄,₆^{α,-α/2}", "A46_half", {{"alpha", 1}},
       [](const Params& p) {
         const double a = get(p, "alpha");
         if (!(a > 0)) domain("alpha must be positive");
         return D{{1, 1, 4, a}, {2, 2, 4, -a / 2}, {2, 3, 4, 1}, {3, 3, 4, -a / 2}, {3, 2, 4, -1}};
       },
       true, {r3_123}, "ℝ³", G::Cross, "", always},
      {"A₄,₈", "A48", {}, fixed({{1, 2, 3, 1}, {2, 2, 4, 1}, {3, 3, 4, -1}}), true, {h3_123}, "h₃", G::Dash, "", always},
      {"A₄,₁₀", "A410", {}, fixed({{1, 2, 3, 1}, {2, 3, 4, 1}, {3, 2, 4, -1}}), true, {h3_123}, "h₃", G::Dash, "", always},
      // non-unimodular
      {"aff_ℝ⊕ℝ²", "affR_R2", {}, fixed({{1, 1, 4, 1}}), false, {r3_123}, "ℝ", G::Cross, "", always},
      {"r₃⊕ℝ", "r3_R", {}, fixed({{1, 1, 4, 1}, {1, 2, 4, 1}, {2, 2, 4, 1}}), false, {r3_123}, "ℝ²", G::Cross, "", always},
      {"r₃,μ⊕ℝ", "r3mu_R", {{"mu", 0.5}},
       [](const Params& p) {
         const double m = get(p, "mu");
         if (!(m > -1 && m <= 1 && m != 0)) domain("mu must lie in (-1, 1] and be non-zero");
         return D{{1, 1, 4, 1}, {2, 2, 4, m}};
       },
       false, {r3_123}, "ℝ²", G::Cross, "", always},
      {"r'₃,μ⊕ℝ", "rp3mu_R", {{"mu", 1}},
       [](const Params& p) {
         const double m = get(p, "mu");
         if (!(m > 0)) domain("mu must be positive");
         return D{{1, 1, 4, m}, {1, 2, 4, 1}, {2, 1, 4, -1}, {2, 2, 4, m}};
       },
       false, {r3_123}, "ℝ²", G::DoubleCheck, "only for μ = 1", [](const Params& p) { return get(p, "mu") == 1.0; }},
      {"A₄,₂^α", "A42", {{"alpha", 2}},
       [](const Params& p) {
         const double a = get(p, "alpha");
         if (a == 0 || a == -2) domain("alpha must differ from 0 and -2");
         return D{{1, 1, 4, a}, {2, 2, 4, 1}, {2, 3, 4, 1}, {3, 3, 4, 1}};
       },
       false, {r3_123}, "ℝ³", G::Cross, "", always},
      {"A₄,₃", "A43", {}, fixed({{1, 1, 4, 1}, {2, 3, 4, 1}}), false, {r3_123}, "ℝ²", G::Cross, "", always},
      {"A₄,₄", "A44", {}, fixed({{1, 1, 4, 1}, {1, 2, 4, 1}, {2, 2, 4, 1}, {2, 3, 4, 1}, {3, 3, 4, 1}}), false, {r3_123}, "ℝ³",
       G::Cross, "", always},
      {"A₄,₅^{α,β}", "A45", {{"alpha", 0.5}, {"beta", 0.75}},
       [](const Params& p) {
         const double a = get(p, "alpha"), b = get(p, "beta");
         if (!(a > -1 && a <= b && b <= 1 && a * b != 0 && b != -(a + 1))) domain("(alpha, beta) outside the stated range");
         return D{{1, 1, 4, 1}, {2, 2, 4, a}, {3, 3, 4, b}};
       },
       false, {r3_123}, "ℝ³", G::Cross, "", always},
      {"A₄,₆^{α,β}", "A46", {{"alpha", 1}, {"beta", 0}},
       [](const Params& p) {
         const double a = get(p, "alpha"), b = get(p, "beta");
         if (!(a > 0) || b == -a / 2) domain("alpha must be positive and beta != -alpha/2");
         return D{{1, 1, 4, a}, {2, 2, 4, b}, {2, 3, 4, 1}, {3, 3, 4, b}, {3, 2, 4, -1}};
       },
       false, {r3_123}, "ℝ³", G::DoubleCheck, "only for α² + 2β² = 1",
       [](const Params& p) {
         const double a = get(p, "alpha"), b = get(p, "beta");
         return std::abs(a * a + 2 * b * b - 1) < 1e-12;
       }},
      {"A₄,₇", "A47", {}, fixed({{1, 1, 4, 2}, {1, 2, 3, 1}, {2, 2, 4, 1}, {2, 3, 4, 1}, {3, 3, 4, 1}}), false, {h3_123}, "h₃",
       G::Dash, "", always},
      {"A₄,₉^α", "A49", {{"alpha", 0.5}},
       [](const Params& p) {
         const double a = get(p, "alpha");
         if (!(a > -1 && a <= 1 && a != 0)) domain("alpha must lie in (-1, 1] and be non-zero");
         return D{{1, 1, 4, a + 1}, {1, 2, 3, 1}, {2, 2, 4, 1}, {3, 3, 4, a}};
       },
       false, {h3_123}, "h₃", G::Dash, "", always},
      {"A₄,₉^0", "A49_0", {}, fixed({{1, 1, 4, 1}, {1, 2, 3, 1}, {2, 2, 4, 1}}), false, {h3_123}, "ℝ²", G::Dash, "", always},
      {"A₄,₁₁^α", "A411", {{"alpha", 1}},
       [](const Params& p) {
         const double a = get(p, "alpha");
         if (!(a > 0)) domain("alpha must be positive");
         return D{{1, 1, 4, 2 * a}, {1, 2, 3, 1}, {2, 2, 4, a}, {2, 3, 4, 1}, {3, 3, 4, a}, {3, 2, 4, -1}};
       },
       false, {h3_123}, "h₃", G::Dash, "", always},
      {"aff_ℂ", "aff_C", {}, fixed({{1, 1, 4, 1}, {1, 2, 3, 1}, {2, 2, 4, 1}, {2, 1, 3, -1}}), false,
       {{"e(2)", span_cols({e(1), e(2), e(3)})}}, "ℝ²", G::Dash, "", always},
      {"aff_ℝ⊕aff_ℝ", "aff_RR", {}, fixed({{1, 1, 2, 1}, {3, 3, 4, 1}}), false,
       {{"e(1,1)", span_cols({e(1), e(3), e(2) - e(4)})}}, "ℝ²", G::Dash, "", always},
  };
  return t;
}

CatalogEntry materialize(const RowDef& r, const Params& overrides) {
  CatalogEntry c;
  c.name = r.name;
  c.key = r.key;
  c.params = r.params;
  for (const auto& [k, v] : overrides) {
    if (!c.params.count(k)) throw Error(ErrorKind::Input, std::string("entry ") + r.name + " has no parameter " + k);
    c.params[k] = v;
  }
  c.differentials = r.diff(c.params);
  c.algebra = from_differentials(4, c.differentials);
  c.unimodular = r.unimodular;
  c.codim1_ideals = r.ideals;
  c.commutator_label = r.commutator;
  c.ge_flag = r.flag;
  c.ge_condition = r.condition;
  c.ge_predicate = r.predicate;
  return c;
}

}  // namespace

std::vector<CatalogEntry> table_entries() {
  std::vector<CatalogEntry> out;
  for (const auto& r : rows()) out.push_back(materialize(r, {}));
  return out;
}

CatalogEntry table_entry(const std::string& name, const Params& params) {
  for (const auto& r : rows())
    if (name == r.name || name == r.key) return materialize(r, params);
  throw Error(ErrorKind::UnknownName, "unknown table entry: " + name);
}

std::string low_dim_label(const LieAlgebra& g, double tol) {
  const int n = g.dim();
  if (n > 3) throw Error(ErrorKind::Dimension, "low_dim_label: dimension above 3");
  const double s = 1.0 + g.max_abs();
  if (g.max_abs() <= tol * s) {
    static const char* ab[] = {"{0}", "ℝ", "ℝ²", "ℝ³"};
    return ab[n];
  }
  if (n == 2) return "aff_ℝ";
  StructureInfo si = structure_analysis(g, tol);
  if (si.is_nilpotent) return "h₃";
  const int dd = si.commutator_ideal.dim();
  if (dd == 3) {
    Mat k(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k(i, j) = (g.ad(Vec::Unit(3, i)) * g.ad(Vec::Unit(3, j))).trace();
    auto sig = signature_of(k, tol * s * s);
    return (sig.first == 0 || sig.second == 0) ? "so(3)" : "so(2,1)";
  }
  if (!si.is_unimodular) return "solvable, non-unimodular";
  if (dd == 2) {
    // A vector transversal to g' acts on g' traceless; the sign of the
    // determinant separates rotations from boosts.
    const Mat& b = si.commutator_ideal.basis();
    Vec z = si.commutator_ideal.complement().basis().col(0);
    Mat m = b.transpose() * g.ad(z) * b;
    return m.determinant() > 0 ? "e(2)" : "e(1,1)";
  }
  return "solvable";
}

std::vector<Subspace> coordinate_ideals(const GEProblem& p, int codim) {
  const int n = p.dim();
  const int m = n - codim;
  std::vector<Subspace> out;
  if (m < 1 || codim < 1) return out;
  std::vector<int> sel(n, 0);
  std::fill(sel.begin(), sel.begin() + m, 1);
  do {
    Mat b = Mat::Zero(n, m);
    std::vector<int> idx;
    for (int i = 0, c = 0; i < n; ++i)
      if (sel[i]) {
        b(i, c++) = 1.0;
        idx.push_back(i);
      }
    Subspace s(n, b);
    if (ideal_defect(p.algebra, s) > 1e-12 * p.scale()) continue;
    Mat gs = b.transpose() * p.metric.matrix() * b;
    Eigen::SelfAdjointEigenSolver<Mat> es(gs);
    if (es.eigenvalues().cwiseAbs().minCoeff() < 1e-9 * (1 + sup_norm(gs))) continue;
    out.push_back(s);
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return out;
}

}  // namespace genein
