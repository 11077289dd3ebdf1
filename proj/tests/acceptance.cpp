// End-to-end acceptance run: one pass/fail line per criterion, non-zero exit
// if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "genein/curvature.hpp"
#include "genein/search.hpp"
#include "oracle.hpp"

using namespace genein;
using oracle::random_basis;
using oracle::transform;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Instance {
  std::string id;
  Params params;
  GEProblem p;
};

const std::vector<Instance>& all_instances() {
  static const std::vector<Instance> v = [] {
    std::vector<Instance> out;
    for (const auto& f : families())
      for (const auto& prm : default_grid(f.family_id)) out.push_back({f.family_id, prm, instantiate_family(f.family_id, prm)});
    return out;
  }();
  return v;
}

GEProblem with_zero_delta(GEProblem p) {
  p.delta = Divergence::zero(p.dim());
  return p;
}

std::string fmt(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

bool dim_of_discrete(const std::string& name) {
  static const std::set<std::string> d{"n", "k", "eps", "eps_f", "sign", "case"};
  return d.count(name) > 0;
}

// ------------------------------------------------------------------- 1

Outcome positive_families() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int count = 0;
  double worst = 0, worst_oracle = 0;
  std::string worst_id;
  for (const auto& f : families()) {
    auto grid = default_grid(f.family_id);
    std::map<std::string, std::set<double>> seen;
    for (const auto& prm : grid) {
      GEProblem p = instantiate_family(f.family_id, prm);
      double r = einstein_residuals(p).total;
      if (r > worst) worst = r, worst_id = f.family_id;
      worst_oracle = std::max(worst_oracle, oracle::ge_residual(p));
      for (const auto& [k, v] : prm)
        if (!std::isnan(v)) seen[k].insert(v);
      ++count;
    }
    for (const auto& name : f.param_names)
      if (!dim_of_discrete(name) && seen[name].size() < 5) {
        o.pass = false;
        o.detail += f.family_id + "." + name + " has " + std::to_string(seen[name].size()) + " grid values; ";
      }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (count < 60 || worst >= 1e-8 || worst_oracle >= 1e-8 || secs >= 5.0) o.pass = false;
  o.detail += std::to_string(count) + " instances, max residual " + fmt(worst) + " (" + worst_id + "), reference " +
              fmt(worst_oracle) + ", " + fmt(secs) + " s";
  return o;
}

// ------------------------------------------------------------------- 2

std::vector<const Instance*> instances_of_dim(int n) {
  std::vector<const Instance*> v;
  for (const auto& i : all_instances())
    if (i.p.dim() == n) v.push_back(&i);
  return v;
}

// g ⊕ ℝ^extra with the new directions central.
LieAlgebra with_center(const LieAlgebra& g, int extra) {
  const int m = g.dim(), n = m + extra;
  std::vector<double> c(n * n * n, 0.0);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c[(k * n + i) * n + j] = g.c(k, i, j);
  return LieAlgebra(n, c);
}

LieAlgebra random_algebra(std::mt19937_64& rng, int n) {
  if (n == 4 && rng() % 2) {
    auto t = table_entries();
    return t[rng() % t.size()].algebra;
  }
  return LieAlgebra::almost_abelian(oracle::random_matrix(rng, n - 1, n - 1));
}

Outcome cross_route() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7001);
  std::normal_distribution<double> nd;
  int agree = 0, ge = 0, beta_bad = 0, total = 0;
  double beta_worst = 0, res_worst = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 3;
    GEProblem p;
    if (t % 2 == 0) {
      const int q = (t / 6) % 3;
      LieAlgebra g = random_algebra(rng, n).change_basis(random_basis(rng, n));
      p = random_problem(g, {n - q, q}, rng());
      if (t % 4 == 0)
        for (int i = 0; i < n; ++i) p.delta.on_vectors(i) = 0.3 * nd(rng), p.delta.on_covectors(i) = 0.3 * nd(rng);
    } else {
      auto pool = instances_of_dim(n);
      p = transform(pool[rng() % pool.size()]->p, random_basis(rng, n));
      if (t % 5 == 1) p.h = p.h * 1.01;  // just off the solution (or still on it when H = 0)
    }
    const EinsteinReport lib = einstein_residuals(p);
    const double ref = oracle::ge_residual(p);
    const bool a = lib.is_einstein;
    const bool b = trace_route_residuals(p).total() < p.tolerance;
    const bool c = ref < p.tolerance;
    agree += (a == b && b == c);
    res_worst = std::max(res_worst, std::abs(lib.total - ref) / (1 + ref));
    ge += a;
    ++total;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec x = Vec::Unit(n, i), y = Vec::Unit(n, j);
        const double bt = beta_trace(p, x, y);
        BetaParts be = beta_explicit(p, x, y);
        const double ref = oracle::beta(p, x, y);
        const double d = std::max(std::abs(bt - (be.sym + be.antisym)), std::abs(bt - ref)) / (1 + std::abs(bt));
        beta_worst = std::max(beta_worst, d);
        if (d >= 1e-9) ++beta_bad;
      }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = agree == total && beta_bad == 0 && res_worst < 1e-9 && secs < 10 && ge > 0 && ge < total;
  o.detail = std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree (" + std::to_string(ge) +
             " GE), residual max rel diff " + fmt(res_worst) + ", beta max rel diff " + fmt(beta_worst) + ", " +
             fmt(secs) + " s";
  return o;
}

// ------------------------------------------------------------------- 3

template <std::size_t K>
double sup(const std::array<double, K>& a) {
  double m = 0;
  for (double v : a) m = std::max(m, v);
  return m;
}

Subspace moved(const Subspace& s, const Mat& pm) { return Subspace::span(Mat(pm.inverse() * s.basis())); }

// What each specialized residual slot should be, read off the general
// equations at the adapted basis vectors. Y runs over the ideal basis and
// its pairwise sums, like the library does.
std::vector<double> expected_slots(const GEProblem& p, const Subspace& s, int codim) {
  Mat pm = adapted_basis(p, s, codim);
  oracle::Raw r = oracle::raw(p);
  const int n = p.dim(), m = n - codim;
  auto y = [&](int i) { return Vec(pm.col(i)); };
  auto maxy = [&](auto fn) {
    double v = 0;
    for (int i = 0; i < m; ++i) v = std::max(v, std::abs(fn(y(i))));
    return v;
  };
  double yy = 0, yz = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Vec v = y(i) + (j != i ? y(j) : Vec::Zero(n));
      yy = std::max(yy, std::abs(oracle::qdiag(r, v)));
      if (j != i) yz = std::max(yz, std::abs(oracle::aform(r, y(i), y(j))));
    }
  std::vector<double> e;
  const Vec x1 = pm.col(m);
  if (codim == 1) {
    e = {std::abs(oracle::qdiag(r, x1)) / 2, maxy([&](const Vec& v) { return oracle::qform(r, x1, v) / 2; }), yy,
         maxy([&](const Vec& v) { return oracle::aform(r, x1, v); }), yz};
  } else {
    const Vec x2 = pm.col(m + 1);
    e = {std::abs(oracle::qdiag(r, x1)) / 2,
         std::abs(oracle::qdiag(r, x2)) / 2,
         std::abs(oracle::qform(r, x1, x2)) / 2,
         maxy([&](const Vec& v) { return oracle::qform(r, x1, v) / 2; }),
         maxy([&](const Vec& v) { return oracle::qform(r, x2, v) / 2; }),
         yy,
         maxy([&](const Vec& v) { return oracle::aform(r, x1, v); }),
         maxy([&](const Vec& v) { return oracle::aform(r, x2, v); }),
         yz};
  }
  for (double& v : e) v /= p.scale();
  return e;
}

Outcome specialized_equations() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int agree1 = 0, n1 = 0, ge1 = 0, agree2 = 0, n2 = 0, ge2 = 0, slot_bad = 0;
  double slot_worst = 0;
  auto slots = [&](const auto& rr, const GEProblem& p, const Subspace& s, int codim) {
    auto e = expected_slots(p, s, codim);
    // Polarization cancels terms of the size of the largest slot, so that is
    // the magnitude the comparison is relative to.
    const double big = 1 + *std::max_element(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double d = std::abs(rr[i] - e[i]) / big;
      slot_worst = std::max(slot_worst, d);
      if (d > 1e-9) ++slot_bad;
    }
  };
  auto check1 = [&](const GEProblem& p, const Subspace& s) {
    auto rr = codim1_residuals(p, s);
    slots(rr, p, s, 1);
    const bool a = sup(rr) < p.tolerance, b = einstein_residuals(p).is_einstein;
    agree1 += a == b, ge1 += b, ++n1;
  };
  auto check2 = [&](const GEProblem& p, const Subspace& s) {
    auto rr = codim2_residuals(p, s);
    slots(rr, p, s, 2);
    const bool a = sup(rr) < p.tolerance, b = einstein_residuals(p).is_einstein;
    agree2 += a == b, ge2 += b, ++n2;
  };
  // catalog instances, δ = 0
  std::vector<std::pair<GEProblem, Subspace>> pool1, pool2;
  for (const auto& inst : all_instances()) {
    GEProblem p = with_zero_delta(inst.p);
    for (const auto& s : coordinate_ideals(p, 1)) check1(p, s), pool1.push_back({p, s});
    for (const auto& s : coordinate_ideals(p, 2)) check2(p, s), pool2.push_back({p, s});
  }
  const int cat1 = n1, cat2 = n2;
  std::mt19937_64 rng(7002);
  std::normal_distribution<double> nd;
  for (int codim = 1; codim <= 2; ++codim) {
    auto& pool = codim == 1 ? pool1 : pool2;
    int made = 0, misses = 0;
    while (made < 100) {
      const int kind = made % 3;
      GEProblem p;
      Subspace s;
      if (kind == 0 && !pool.empty()) {
        // a GE instance in a scrambled basis
        const auto& [q, ideal] = pool[rng() % pool.size()];
        Mat pm = random_basis(rng, q.dim());
        p = transform(q, pm);
        s = moved(ideal, pm);
      } else if (kind == 1 && !pool.empty()) {
        // the same, perturbed off the solution set
        const auto& [q, ideal] = pool[rng() % pool.size()];
        Mat pm = random_basis(rng, q.dim());
        GEProblem r = q;
        Mat g = r.metric.matrix();
        g(0, 0) *= 1.05;
        r.metric = ScalarProduct(g);
        r.h = r.h * 1.02;
        p = transform(r, pm);
        s = moved(ideal, pm);
      } else {
        const int n = codim == 1 ? 3 + made % 3 : 4 + made % 2;
        const int q = made % 7 % (n == 3 ? 2 : 3);
        LieAlgebra alg = random_algebra(rng, n);
        if (n == 5 && (made / 3) % 2) {
          // non-Abelian ideals, so that every term of the equations is live
          auto t = table_entries();
          alg = with_center(t[rng() % t.size()].algebra, 1);
        } else if (codim == 2 && n == 5) {
          // keep span(e1..e3) invariant so that it is a codim-2 ideal
          Mat f = oracle::random_matrix(rng, 4, 4);
          f.block(3, 0, 1, 3).setZero();
          alg = LieAlgebra::almost_abelian(f);
        }
        p = random_problem(alg, {n - q, q}, rng());
        auto ideals = coordinate_ideals(p, codim);
        if (ideals.empty()) {
          if (++misses > 10000) throw std::runtime_error("no applicable random setups");
          continue;
        }
        const Subspace& pick = ideals[rng() % ideals.size()];
        // A nearly null complement makes the orthonormal frame blow up and
        // both sides lose most of their digits; such setups say nothing.
        Eigen::JacobiSVD<Mat> sv(adapted_basis(p, pick, codim));
        if (sv.singularValues()(0) / sv.singularValues()(n - 1) > 1e3) {
          if (++misses > 10000) throw std::runtime_error("no applicable random setups");
          continue;
        }
        Mat pm = random_basis(rng, n);
        s = moved(pick, pm);
        p = transform(p, pm);
      }
      if (codim == 1)
        check1(p, s);
      else
        check2(p, s);
      ++made;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = agree1 == n1 && agree2 == n2 && slot_bad == 0 && secs < 10 && ge1 > 0 && ge2 > 0;
  o.detail = "codim 1: " + std::to_string(agree1) + "/" + std::to_string(n1) + " agree (" + std::to_string(cat1) +
             " catalog, " + std::to_string(ge1) + " GE); codim 2: " + std::to_string(agree2) + "/" + std::to_string(n2) +
             " agree (" + std::to_string(cat2) + " catalog, " + std::to_string(ge2) + " GE); per-equation max rel diff " + fmt(slot_worst) + ", " + fmt(secs) + " s";
  return o;
}

// ------------------------------------------------------------------- 4

Outcome flatness() {
  Outcome o;
  int ok = 0, total = 0;
  const std::vector<std::pair<std::string, bool>> cases{{"aa.H0.lor.i", true},  {"aa.H0.lor.ii", true},
                                                        {"aa.H0.lor.iii", true}, {"aa.H0.lor.iv", false},
                                                        {"aa.H0.lor.v", true},  {"aa.H0.lor.vi", false}};
  for (const auto& [id, flat] : cases) {
    auto grid = default_grid(id);
    for (std::size_t i = 0; i < 3 && i < grid.size(); ++i) {
      GEProblem p = instantiate_family(id, grid[i]);
      const bool lib = curvature_report(p.algebra, p.metric).is_flat;
      const bool ref = oracle::riemann_sup(p.algebra, p.metric.matrix()) < 1e-8;
      if (lib == flat && ref == flat)
        ++ok;
      else
        o.detail += id + " point " + std::to_string(i) + " disagrees; ";
      ++total;
    }
  }
  const int classified = total;
  for (const auto& prm : default_grid("aa.deg")) {
    GEProblem p = instantiate_family("aa.deg", prm);
    ok += curvature_report(p.algebra, p.metric).is_flat && oracle::riemann_sup(p.algebra, p.metric.matrix()) < 1e-8;
    ++total;
  }
  const int deg = total - classified;
  // random almost Abelian setups, Euclidean and Lorentzian ideals
  std::mt19937_64 rng(7004);
  int flat_count = 0, rand_ok = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 4;  // dim of the ideal
    const bool lor = (t / 4) % 2 == 1 && m >= 2;
    Mat gn = Mat::Identity(m, m);
    if (lor) gn(0, 0) = -1;
    Mat s = oracle::random_matrix(rng, m, m);
    Mat skew = gn.inverse() * (s - s.transpose());  // g-skew
    Mat f;
    switch (t % 3) {
      case 0:
        f = oracle::random_matrix(rng, m, m);
        break;
      case 1:
        f = skew;
        break;
      default: {
        if (!lor) {
          f = skew;
          f(0, 0) += 1e-3;  // breaks skewness slightly
          break;
        }
        // f^S = ±Y♭⊗Y with Y null; f^A kills Y unless the last case flips it
        Vec y = Vec::Zero(m);
        y(0) = 1, y(1) = 1;
        Vec w = Vec::Unit(m, 1);
        Mat pr = Mat::Identity(m, m) - y * w.transpose() / w.dot(y);
        Mat a = gn.inverse() * pr.transpose() * (s - s.transpose()) * pr;
        Mat sym = y * (gn * y).transpose();
        f = a + ((t / 3) % 2 ? 1.0 : -1.0) * sym;
        if (t % 5 == 0) f += gn.inverse() * (Vec::Unit(m, 0) * Vec::Unit(m, m - 1).transpose() -
                                              Vec::Unit(m, m - 1) * Vec::Unit(m, 0).transpose());
      }
    }
    const double ex = t % 7 == 0 ? -1.0 : 1.0;
    Mat g = Mat::Zero(m + 1, m + 1);
    g.topLeftCorner(m, m) = gn;
    g(m, m) = ex;
    if (lor && ex < 0) g(m, m) = 1.0;  // keep at most one negative direction
    LieAlgebra alg = LieAlgebra::almost_abelian(f);
    const bool direct = curvature_report(alg, ScalarProduct(g)).is_flat;
    const bool ref = oracle::riemann_sup(alg, g) < 1e-8 * (1 + f.cwiseAbs().maxCoeff()) * (1 + f.cwiseAbs().maxCoeff());
    const bool test = almost_abelian_flat_test(ScalarProduct(gn), f);
    rand_ok += direct == ref && ref == test;
    flat_count += ref;
  }
  o.pass = ok == total && rand_ok == 100 && flat_count > 10 && flat_count < 90;
  o.detail += std::to_string(ok) + "/" + std::to_string(total) + " classified points (" + std::to_string(classified) + " H=0 cases, " +
              std::to_string(deg) + " degenerate), random " + std::to_string(rand_ok) + "/100 agree (" +
              std::to_string(flat_count) + " flat)";
  return o;
}

// ------------------------------------------------------------------- 5

// Adds m central abelian directions with identity metric.
GEProblem embed(const GEProblem& p, int m) {
  const int n = p.dim(), N = n + m;
  std::vector<double> c(N * N * N, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c[(k * N + i) * N + j] = p.algebra.c(k, i, j);
  Mat g = Mat::Identity(N, N);
  g.topLeftCorner(n, n) = p.metric.matrix();
  KForm h(N, 3);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int d = b + 1; d < n; ++d) h.set({a, b, d}, p.h.at({a, b, d}));
  Divergence dl = Divergence::zero(N);
  dl.on_vectors.head(n) = p.delta.on_vectors;
  dl.on_covectors.head(n) = p.delta.on_covectors;
  return make_problem(LieAlgebra(N, c), ScalarProduct(g), h, dl, p.tolerance);
}

// ℝ^k ⋊ ℝ^m with commuting actions by `blocks` (k×k each).
GEProblem semidirect(const std::vector<Mat>& acts, const Vec& dv_h, const Vec& dc_h) {
  const int k = static_cast<int>(acts[0].rows()), m = static_cast<int>(acts.size()), n = k + m;
  std::vector<Bracket> br;
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < k; ++r)
        if (acts[a](r, j) != 0) br.push_back({j + 1, k + a + 1, r + 1, -acts[a](r, j)});
  Divergence d = Divergence::zero(n);
  d.on_vectors.tail(m) = dv_h;
  d.on_covectors.tail(m) = dc_h;
  return make_problem(new_lie_algebra(n, br), ScalarProduct(Mat::Identity(n, n)), KForm(n, 3), d);
}

Mat rotations(const std::vector<double>& angles) {
  const int k = 2 * static_cast<int>(angles.size());
  Mat r = Mat::Zero(k, k);
  for (std::size_t i = 0; i < angles.size(); ++i) r(2 * i + 1, 2 * i) = angles[i], r(2 * i, 2 * i + 1) = -angles[i];
  return r;
}

Outcome riemannian_reduction() {
  Outcome o;
  std::mt19937_64 rng(7005);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  std::normal_distribution<double> nd;
  int cat_ok = 0, cat_total = 0;
  for (const char* id : {"riem.4d.ii", "riem.4d.iii"})
    for (const auto& prm : default_grid(id)) {
      GEProblem p = instantiate_family(id, prm);
      ReductionReport r = riemannian_reduction_check(p);
      const bool restricted = r.commutator.dim() == 0 || is_generalised_einstein(r.restricted_problem);
      cat_ok += r.all_conditions() && restricted && is_generalised_einstein(p);
      ++cat_total;
    }

  int pos_ok = 0, neg_ok = 0;
  // positives
  for (int t = 0; t < 10; ++t) {
    GEProblem p;
    if (t < 5) {
      const int pairs = 1 + t % 2, m = 1 + (t / 2) % 2;
      std::vector<Mat> acts;
      for (int a = 0; a < m; ++a) {
        std::vector<double> ang;
        for (int b = 0; b < pairs; ++b) ang.push_back(u(rng));
        acts.push_back(rotations(ang));
      }
      Vec dv(m), dc(m);
      for (int a = 0; a < m; ++a) dv(a) = nd(rng), dc(a) = nd(rng);
      p = semidirect(acts, dv, dc);
    } else {
      auto grid = default_grid("riem.4d.iii");
      GEProblem base = instantiate_family("riem.4d.iii", grid[rng() % grid.size()]);
      p = embed(base, t % 3);
      for (int a = 4; a < p.dim(); ++a) p.delta.on_vectors(a) = nd(rng), p.delta.on_covectors(a) = nd(rng);
    }
    Mat q = oracle::random_orthogonal(rng, p.dim()) * (1.0 + 0.5 * (t % 3));
    p = transform(p, q);
    ReductionReport r = riemannian_reduction_check(p);
    const bool restricted = r.commutator.dim() == 0 || is_generalised_einstein(r.restricted_problem);
    if (r.all_conditions() && restricted && is_generalised_einstein(p) && oracle::ge_residual(p) < 1e-9)
      ++pos_ok;
    else
      o.detail += "positive " + std::to_string(t) + " failed; ";
  }
  // negatives, each breaking exactly one condition
  for (int t = 0; t < 10; ++t) {
    GEProblem p;
    int broken = 0;  // 0 abelian, 1 skew, 2 hook, 3 delta
    if (t < 3) {
      broken = 1;
      Mat a = rotations({u(rng)});
      Mat s = Mat::Zero(2, 2);
      s(0, 0) = 0.4 + 0.2 * t, s(1, 1) = -(0.4 + 0.2 * t);
      p = semidirect({Mat(a + s)}, Vec::Zero(1), Vec::Zero(1));
    } else if (t < 6) {
      broken = 2;
      if (t == 3) {
        KForm h(4, 3);
        h.set({0, 1, 2}, 0.7);
        h.set({1, 2, 3}, -0.4);
        p = make_problem(LieAlgebra(4), ScalarProduct(Mat::Identity(4, 4)), h);
      } else {
        GEProblem base = instantiate_family("riem.4d.iii", {{"d1", 0.0}, {"d4", 0.0}, {"D4", 0.0}});
        KForm h = base.h;
        h.set({0, 1, 3}, 0.2 * t);
        p = make_problem(base.algebra, base.metric, h);
      }
    } else if (t < 8) {
      broken = 0;
      const int n = 3 + (t - 6);
      p = make_problem(new_lie_algebra(n, {{1, 2, 3, 1.0 + 0.5 * (t - 6)}}), ScalarProduct(Mat::Identity(n, n)), KForm(n, 3));
    } else {
      broken = 3;
      p = instantiate_family("riem.4d.ii");
      p.delta.on_vectors(0) = 0.3 * (t - 7);
      if (t == 9) p.delta.on_covectors(1) = 0.25;
    }
    p = transform(p, oracle::random_orthogonal(rng, p.dim()));
    ReductionReport r = riemannian_reduction_check(p);
    const bool flags[4] = {r.h_abelian, r.h_acts_skew, r.h_hooks_H_zero, r.delta_constraint};
    bool exactly = true;
    for (int i = 0; i < 4; ++i) exactly = exactly && (flags[i] == (i != broken));
    const bool restricted = r.commutator.dim() == 0 || is_generalised_einstein(r.restricted_problem);
    if (exactly && restricted && !is_generalised_einstein(p) && oracle::ge_residual(p) > 1e-6)
      ++neg_ok;
    else
      o.detail += "negative " + std::to_string(t) + " failed; ";
  }
  o.pass = cat_ok == cat_total && pos_ok == 10 && neg_ok == 10;
  o.detail += "catalog " + std::to_string(cat_ok) + "/" + std::to_string(cat_total) + ", synthesized GE " +
              std::to_string(pos_ok) + "/10, single violation " + std::to_string(neg_ok) + "/10";
  return o;
}

// ------------------------------------------------------------------- 6

int rank_of(const Mat& m) { return m.rows() == 0 ? 0 : numeric_rank(m); }

// Expected dimension, plus (where the statement pins the space down) the
// rows cutting it out.
Outcome divergence_spaces() {
  Outcome o;
  int ok = 0, total = 0;
  auto record = [&](const std::string& what, const GEProblem& p, int want, const std::optional<Mat>& rows) {
    Subspace s = admissible_divergences(p.algebra, p.metric, p.h, p.tolerance);
    bool good = s.dim() == want;
    if (rows) {
      // every admissible δ satisfies the stated rows
      good = good && rows->cols() == 2 * p.dim() && sup_norm(Mat(*rows * s.basis())) < 1e-9;
    }
    ok += good;
    ++total;
    if (!good) o.detail += what + " got " + std::to_string(s.dim()) + " want " + std::to_string(want) + "; ";
  };
  // e(2)⊕ℝ: dim 4 inside span{e3, e4, e^3, e^4}
  for (const auto& prm : default_grid("riem.4d.ii")) {
    GEProblem p = instantiate_family("riem.4d.ii", prm);
    Mat rows = Mat::Zero(4, 8);
    rows(0, 0) = rows(1, 1) = rows(2, 4) = rows(3, 5) = 1;
    record("riem.4d.ii", p, 4, rows);
  }
  // Lorentzian almost Abelian, H = 0: 2n − 2 rank f
  for (const char* id : {"aa.H0.riem", "aa.H0.lor.i", "aa.H0.lor.ii", "aa.H0.lor.iii", "aa.4d.i", "aa.4d.ii"})
    for (const auto& prm : default_grid(id)) {
      GEProblem p = instantiate_family(id, prm);
      const int n = p.dim();
      Mat f(n - 1, n - 1);
      for (int k = 0; k < n - 1; ++k)
        for (int j = 0; j < n - 1; ++j) f(k, j) = p.algebra.c(k, n - 1, j);
      record(id, p, 2 * n - 2 * rank_of(f), divergence_constraints(id, prm));
    }
  // reductive cases
  for (const char* id : {"red.so3", "red.so21.alpha", "red.so21.beta", "red.so21.gamma"})
    for (const auto& prm : default_grid(id)) {
      GEProblem p = instantiate_family(id, prm);
      const double b = prm.count("b") ? prm.at("b") : 1.0;
      const std::string sid = id;
      int want = 3;
      if ((sid == "red.so3" || sid == "red.so21.alpha") && b == 0) want = 5;
      record(id, p, want, divergence_constraints(id, prm));
    }
  o.pass = ok == total;
  o.detail += std::to_string(ok) + "/" + std::to_string(total) + " dimensions exact";
  return o;
}

// ------------------------------------------------------------------- 7

struct FloorCase {
  const char* key;
  Params params;
  double gap;
  double frozen;
};

// Seeded floors, frozen from a reference run (seed 20261015, 10^4 trials).
const std::vector<FloorCase>& floor_cases() {
  static const std::vector<FloorCase> v{
      {"A42_m2", {}, 0.0, 1.3164660335708336},
      {"A45_neg", {}, 0.0, 0.38922650711813922},
      {"A46_half", {}, 0.0, 0.51728651558019778},
      {"A48", {}, 0.0, 1.3752308856149134},
      {"A410", {}, 0.0, 0.54572839709908316},
      {"affR_R2", {}, 0.0, 0.36812489053475228},
      {"r3_R", {}, 0.0, 0.64143254297911823},
      {"r3mu_R", {}, 0.0, 0.53190533242471949},
      {"rp3mu_R", {{"mu", 2.0}}, 0.0, 2.1034380153538934},
      {"A42", {}, 0.0, 2.1109630922743681},
      {"A43", {}, 0.0, 0.42233924168750064},
      {"A44", {}, 0.0, 2.0709033552654805},
      {"A45", {}, 0.0, 1.0186706753128383},
      {"A47", {}, 0.0, 1.810926051106956},
      {"A49", {}, 0.0, 0.8092356626758711},
      {"A411", {}, 0.0, 1.962398720569607},
      {"A49_0", {}, 0.1, 1.4665708968465594},
      {"aff_C", {}, 0.1, 2.1530726523891683},
      {"aff_RR", {}, 0.1, 1.078776077417837},
  };
  return v;
}

Outcome falsification_floors() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = 20261015;
  int ok = 0;
  double lowest = 1e300;
  std::ostringstream dump;
  dump.precision(17);
  for (const auto& c : floor_cases()) {
    CatalogEntry e = table_entry(c.key, c.params);
    FalsifyOptions opt;
    opt.commutator_gap = c.gap;
    FalsifyResult r = random_falsification(e.algebra, {3, 1}, 10000, seed, opt);
    lowest = std::min(lowest, r.min_residual);
    // relative slack only for compiler-dependent rounding
    const bool same = std::abs(r.min_residual - c.frozen) <= 1e-9 * c.frozen;
    if (same && r.min_residual > 1e-3) ++ok;
    dump << c.key << "=" << r.min_residual << " ";
  }
  // determinism: the serial reference gives the identical floor
  CatalogEntry e = table_entry("aff_C");
  FalsifyOptions opt;
  opt.commutator_gap = 0.1;
  FalsifyResult par = random_falsification(e.algebra, {3, 1}, 2000, seed, opt);
  FalsifyResult ser = random_falsification_serial(e.algebra, {3, 1}, 2000, seed, opt);
  const bool det = par.min_residual == ser.min_residual && par.argmin_trial == ser.argmin_trial;
  // harness sanity: an injected GE problem on the same algebra is found
  GEProblem known = instantiate_family("red.so3");
  FalsifyOptions inj;
  inj.inject = known;
  FalsifyResult fi = random_falsification(known.algebra, {3, 1}, 200, seed, inj);
  const bool found = fi.argmin_trial == -1 && fi.min_residual < 1e-9;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int n = static_cast<int>(floor_cases().size());
  o.pass = ok == n && det && found && secs < 60;
  o.detail = std::to_string(ok) + "/" + std::to_string(n) + " floors reproduced and > 1e-3 (lowest " + fmt(lowest) +
             "), serial == parallel: " + (det ? "yes" : "no") + ", injected solution found: " + (found ? "yes" : "no") + ", " +
             fmt(secs) + " s";
  if (std::getenv("GENEIN_DUMP_FLOORS")) std::cerr << dump.str() << "\n";
  return o;
}

// ------------------------------------------------------------------- 8

Outcome bismut() {
  Outcome o;
  int checked = 0, ok = 0, with_h = 0;
  double worst = 0;
  for (const auto& inst : all_instances()) {
    if (!structure_analysis(inst.p.algebra).is_unimodular) continue;
    GEProblem p = with_zero_delta(inst.p);
    if (!is_generalised_einstein(p)) continue;
    const double m = std::max(sup_norm(bismut_ricci(p, +1)), sup_norm(bismut_ricci(p, -1)));
    worst = std::max(worst, m);
    ok += m < 1e-8;
    with_h += p.h.max_abs() > 0;
    ++checked;
  }
  o.pass = ok == checked && checked > 0 && with_h > 0;
  o.detail = std::to_string(ok) + "/" + std::to_string(checked) + " unimodular instances (" + std::to_string(with_h) +
             " with H ≠ 0), max |Ric±| " + fmt(worst);
  return o;
}

// ------------------------------------------------------------------- 9

// g-isometry of lorentz(n) by Cayley transform of a g-skew map.
Mat random_isometry(std::mt19937_64& rng, const Mat& g) {
  // Boosts are unbounded; keep the conditioning moderate so the conjugated
  // map stays a fair test rather than a numerical stress test.
  const int n = static_cast<int>(g.rows());
  for (;;) {
    Mat s = oracle::random_matrix(rng, n, n, 0.4);
    Mat a = g.inverse() * (s - s.transpose());
    Mat q = (Mat::Identity(n, n) - a).inverse() * (Mat::Identity(n, n) + a);
    Eigen::JacobiSVD<Mat> sv(q);
    if (sv.singularValues()(0) / sv.singularValues()(n - 1) < 20) return q;
  }
}

// Parameters with eigenvalues well apart.
std::vector<double> separated(std::mt19937_64& rng, int count, const std::vector<double>& avoid) {
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> out;
  while (static_cast<int>(out.size()) < count) {
    double x = u(rng);
    bool far = true;
    for (double y : out) far = far && std::abs(x - y) > 0.2;
    for (double y : avoid) far = far && std::abs(x - y) > 0.2;
    if (far) out.push_back(x);
  }
  return out;
}

std::vector<double> generic_params(std::mt19937_64& rng, CanonicalType t, int n) {
  std::uniform_real_distribution<double> u(-2, 2), pos(0.5, 2);
  switch (t) {
    case CanonicalType::First:
      return separated(rng, n, {});
    case CanonicalType::Second: {
      std::vector<double> p{u(rng), pos(rng)};
      auto rest = separated(rng, n - 2, {});
      p.insert(p.end(), rest.begin(), rest.end());
      return p;
    }
    case CanonicalType::Third: {
      double gam = u(rng);
      std::vector<double> p{gam, rng() % 2 ? 1.0 : -1.0};
      auto rest = separated(rng, n - 2, {gam});
      p.insert(p.end(), rest.begin(), rest.end());
      return p;
    }
    case CanonicalType::Fourth: {
      double tau = u(rng);
      std::vector<double> p{tau};
      auto rest = separated(rng, n - 3, {tau});
      p.insert(p.end(), rest.begin(), rest.end());
      return p;
    }
  }
  return {};
}

Outcome normal_forms_suite() {
  Outcome o;
  std::mt19937_64 rng(7009);
  const CanonicalType types[4] = {CanonicalType::First, CanonicalType::Second, CanonicalType::Third, CanonicalType::Fourth};
  int cls_ok = 0, cls_total = 0, jor_ok = 0, jor_total = 0, tr_ok = 0, tr_total = 0;
  for (CanonicalType t : types) {
    for (int k = 0; k < 51; ++k) {
      const int n = 3 + k % 3;
      ScalarProduct g = lorentz(n);
      Mat f = canonical_matrix(t, generic_params(rng, t, n));
      if (k > 0) {
        Mat q = random_isometry(rng, g.matrix());
        f = q * f * q.inverse();
      }
      cls_ok += classify_symmetric(g, f) == t;
      ++cls_total;
      jor_ok += implied_type(jordan_oracle(f)) == classify_symmetric(g, f);
      ++jor_total;
    }
    // tr(f²) closed forms and their zero sets
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 20; ++k) {
      const int n = 3 + k % 3;
      std::vector<double> p = generic_params(rng, t, n);
      const bool zero_point = k % 2 == 0;
      if (zero_point) {
        switch (t) {
          case CanonicalType::First:
            std::fill(p.begin(), p.end(), 0.0);
            break;
          case CanonicalType::Second: {
            double s = p[0] * p[0];
            for (std::size_t i = 2; i < p.size(); ++i) s += 0.5 * p[i] * p[i];
            p[1] = std::sqrt(s);
            break;
          }
          case CanonicalType::Third:
            p[0] = 0;
            for (std::size_t i = 2; i < p.size(); ++i) p[i] = 0;
            break;
          case CanonicalType::Fourth:
            std::fill(p.begin(), p.end(), 0.0);
            break;
        }
      }
      Mat f = canonical_matrix(t, p);
      const double direct = (f * f).trace();
      const double closed = trfs2_gap(t, p);
      bool good = std::abs(direct - closed) < 1e-12 * (1 + std::abs(direct));
      if (zero_point)
        good = good && std::abs(direct) < 1e-12;
      else
        good = good && std::abs(direct) > 1e-6 && (t == CanonicalType::Second || direct > 0);
      tr_ok += good;
      ++tr_total;
    }
  }
  o.pass = cls_ok == cls_total && jor_ok == jor_total && tr_ok == tr_total;
  o.detail = "classification " + std::to_string(cls_ok) + "/" + std::to_string(cls_total) + ", Jordan agreement " +
             std::to_string(jor_ok) + "/" + std::to_string(jor_total) + ", tr(f²) conditions " + std::to_string(tr_ok) + "/" +
             std::to_string(tr_total);
  return o;
}

// ------------------------------------------------------------------ 10

Outcome structural_metadata() {
  Outcome o;
  int ok = 0, total = 0;
  for (const auto& e : table_entries()) {
    StructureInfo si = structure_analysis(e.algebra);
    std::string label = "{0}";
    if (si.commutator_ideal.dim() > 0) {
      label = low_dim_label(restrict_to(e.algebra, si.commutator_ideal.basis()));
    }
    bool good = label == e.commutator_label && si.is_unimodular == e.unimodular;
    for (const auto& w : e.codim1_ideals) {
      Subspace s = Subspace::span(w.basis);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < s.dim(); ++j) good = good && s.contains(e.algebra.bracket(Vec::Unit(4, i), s.basis().col(j)));
      good = good && s.dim() == 3 && low_dim_label(restrict_to(e.algebra, s.basis())) == w.label;
    }
    ok += good;
    ++total;
    if (!good) o.detail += e.key + " (" + label + " vs " + e.commutator_label + "); ";
  }
  o.pass = ok == total && total == 27;
  o.detail += std::to_string(ok) + "/" + std::to_string(total) + " table entries";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
      {"positive families", positive_families},
      {"cross-route oracle", cross_route},
      {"specialized equations", specialized_equations},
      {"flatness", flatness},
      {"Riemannian reduction", riemannian_reduction},
      {"divergence spaces", divergence_spaces},
      {"falsification floors", falsification_floors},
      {"Bismut Ricci", bismut},
      {"normal forms", normal_forms_suite},
      {"structural metadata", structural_metadata},
  };
  int failed = 0, i = 0;
  for (const auto& [name, fn] : criteria) {
    ++i;
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << i << ". " << name << ": " << r.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
