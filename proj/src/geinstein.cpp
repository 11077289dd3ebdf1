#include "genein/geinstein.hpp"

#include <algorithm>
#include <cmath>

namespace genein {

Vec GeneralisedVector::stacked() const {
  Vec s(vec.size() + covec.size());
  s << vec, covec;
  return s;
}

GeneralisedVector GeneralisedVector::from_stacked(const Vec& v) {
  const int n = static_cast<int>(v.size() / 2);
  return {v.head(n), v.tail(n)};
}

Divergence Divergence::zero(int n) { return {Vec::Zero(n), Vec::Zero(n)}; }

Vec Divergence::stacked() const {
  Vec s(on_vectors.size() + on_covectors.size());
  s << on_vectors, on_covectors;
  return s;
}

Divergence Divergence::from_stacked(const Vec& v) {
  const int n = static_cast<int>(v.size() / 2);
  return {v.head(n), v.tail(n)};
}

double Divergence::max_abs() const {
  double m = 0;
  if (on_vectors.size()) m = std::max(m, on_vectors.cwiseAbs().maxCoeff());
  if (on_covectors.size()) m = std::max(m, on_covectors.cwiseAbs().maxCoeff());
  return m;
}

double GEProblem::scale() const { return 1.0 + std::max({algebra.max_abs(), h.max_abs(), delta.max_abs()}); }

void validate(const GEProblem& p) {
  const int n = p.algebra.dim();
  if (p.metric.dim() != n) throw Error(ErrorKind::Dimension, "metric dimension does not match algebra");
  if (p.h.dim() != n || p.h.degree() != 3) throw Error(ErrorKind::Dimension, "H must be a 3-form on the algebra");
  if (p.delta.on_vectors.size() != n || p.delta.on_covectors.size() != n)
    throw Error(ErrorKind::Dimension, "divergence must have 2n coefficients");
  if (!p.delta.on_vectors.allFinite() || !p.delta.on_covectors.allFinite())
    throw Error(ErrorKind::Input, "divergence coefficients must be finite");
  const double s = 1.0 + std::max(p.algebra.max_abs(), p.h.max_abs());
  double jr = jacobi_residual(p.algebra);
  if (jr > p.tolerance * s * s) throw Error(ErrorKind::Jacobi, "Jacobi identity fails", jr);
  if (n >= 4) {
    double dh = ce_differential(p.algebra, p.h).max_abs();
    if (dh > p.tolerance * s * s) throw Error(ErrorKind::NotClosed, "dH != 0", dh);
  }
}

GEProblem make_problem(LieAlgebra alg, ScalarProduct metric, KForm h, Divergence delta, double tol) {
  GEProblem p{std::move(alg), std::move(metric), std::move(h), std::move(delta), tol};
  validate(p);
  return p;
}

GEProblem make_problem(LieAlgebra alg, ScalarProduct metric, KForm h) {
  const int n = alg.dim();
  return make_problem(std::move(alg), std::move(metric), std::move(h), Divergence::zero(n));
}

// ---------------------------------------------------------------- the double

Mat dorfman_ad(const GEProblem& p, const GeneralisedVector& a) {
  const int n = p.dim();
  const auto& g = p.algebra;
  Mat m = Mat::Zero(2 * n, 2 * n);
  Mat adx = g.ad(a.vec);
  m.topLeftCorner(n, n) = adx;
  m.bottomRightCorner(n, n) = -adx.transpose();
  // Y ↦ ξ([Y, ·]) and Y ↦ H(X, Y, ·)
  Mat k(n, n);
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y) {
      double s = 0;
      for (int q = 0; q < n; ++q) s += a.covec(q) * g.c(q, y, z);
      k(z, y) = s;
    }
  m.bottomLeftCorner(n, n) = k + p.h.interior(a.vec).as_matrix().transpose();
  return m;
}

GeneralisedVector dorfman_bracket(const GEProblem& p, const GeneralisedVector& a, const GeneralisedVector& b) {
  return GeneralisedVector::from_stacked(dorfman_ad(p, a) * b.stacked());
}

Mat generalised_metric(const ScalarProduct& g) {
  const int n = g.dim();
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = g.inverse();
  m.bottomLeftCorner(n, n) = g.matrix();
  return m;
}

Mat pairing_matrix(int n) {
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = 0.5 * Mat::Identity(n, n);
  m.bottomLeftCorner(n, n) = 0.5 * Mat::Identity(n, n);
  return m;
}

Mat projector(const ScalarProduct& g, int sign) {
  const int n = g.dim();
  return 0.5 * (Mat::Identity(2 * n, 2 * n) + (sign > 0 ? 1.0 : -1.0) * generalised_metric(g));
}

// ---------------------------------------------------------------- Γ, β

Mat gamma_pm(const GEProblem& p, const Vec& x, int sign) {
  Mat adS = sym_antisym_parts(p.metric, p.algebra.ad(x)).first;
  Mat hx = h_endo(p.metric, p.h, x);
  return 0.25 * (2.0 * adS + ad_star(p.algebra, p.metric, x) + (sign > 0 ? 1.0 : -1.0) * hx);
}

double beta_trace(const GEProblem& p, const Vec& x, const Vec& y) {
  return 2.0 * (gamma_pm(p, x, -1) * gamma_pm(p, y, +1)).trace();
}

BetaParts beta_explicit(const GEProblem& p, const Vec& x, const Vec& y) {
  const auto& g = p.metric;
  Mat sx = sym_antisym_parts(g, p.algebra.ad(x)).first;
  Mat sy = sym_antisym_parts(g, p.algebra.ad(y)).first;
  Mat ax = ad_star(p.algebra, g, x), ay = ad_star(p.algebra, g, y);
  KForm hx = p.h.interior(x), hy = p.h.interior(y);
  BetaParts b;
  b.sym = 0.5 * tensor_inner(g, sx, sy) - 0.125 * tensor_inner(g, ax, ay) + 0.25 * tensor_inner(g, hx, hy);
  b.antisym = 0.125 * (tensor_inner(g, h_endo(g, p.h, x), ay) - tensor_inner(g, h_endo(g, p.h, y), ax));
  return b;
}

// ---------------------------------------------------------------- residuals

namespace {

// Polarization inputs: e_i and e_i + e_j for i < j.
std::vector<Vec> polarized(int n) {
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec x = Vec::Unit(n, i);
      if (j != i) x += Vec::Unit(n, j);
      out.push_back(x);
    }
  return out;
}

}  // namespace

EinsteinReport einstein_residuals(const GEProblem& p) {
  const int n = p.dim();
  const auto& g = p.metric;
  const auto& alg = p.algebra;
  const Vec& dv = p.delta.on_vectors;
  const Vec& dc = p.delta.on_covectors;
  EinsteinReport r;
  for (const Vec& x : polarized(n)) {
    Mat adx = alg.ad(x);
    Vec w = adjoint_endo(g, adx) * x;  // ad_X^*(X)
    Mat s = sym_antisym_parts(g, adx).first;
    Mat a = ad_star(alg, g, x);
    KForm hx = p.h.interior(x);
    double e1 = 2.0 * dv.dot(w) + 4.0 * tensor_inner(g, s, s) - tensor_inner(g, a, a) + 2.0 * tensor_inner(g, hx, hx);
    double e3 = dc.dot(g.flat(w));
    r.eq1 = std::max(r.eq1, std::abs(e1));
    r.eq3 = std::max(r.eq3, std::abs(e3));
  }
  std::vector<Mat> astar(n), hend(n);
  for (int i = 0; i < n; ++i) {
    astar[i] = ad_star(alg, g, Vec::Unit(n, i));
    hend[i] = h_endo(g, p.h, Vec::Unit(n, i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec br = alg.bracket_basis(i, j);
      Vec hv = p.h.interior(Vec::Unit(n, i)).interior(Vec::Unit(n, j)).as_vector();
      double e2 = 2.0 * (dv.dot(g.sharp(hv)) + dc.dot(g.flat(br))) -
                  (tensor_inner(g, hend[i], astar[j]) - tensor_inner(g, hend[j], astar[i]));
      double e4 = dv.dot(br) + dc.dot(hv);
      r.eq2 = std::max(r.eq2, std::abs(e2));
      r.eq4 = std::max(r.eq4, std::abs(e4));
    }
  const double s = p.scale();
  r.eq1 /= s;
  r.eq2 /= s;
  r.eq3 /= s;
  r.eq4 /= s;
  r.total = std::max({r.eq1, r.eq2, r.eq3, r.eq4});
  r.is_einstein = r.total < p.tolerance;
  return r;
}

bool is_generalised_einstein(const GEProblem& p, double tol) { return einstein_residuals(p).total < tol; }

TraceResiduals trace_route_residuals(const GEProblem& p) {
  const int n = p.dim();
  Mat pp = projector(p.metric, +1), pm = projector(p.metric, -1);
  Mat gg = generalised_metric(p.metric);
  Vec delta = p.delta.stacked();
  std::vector<Mat> gu(n), gv(n);
  std::vector<Vec> us(n), vs(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(2 * n);
    e(i) = 1.0;
    us[i] = pp * e;
    vs[i] = pm * e;
    gu[i] = pp * dorfman_ad(p, GeneralisedVector::from_stacked(us[i])) * pm;
    gv[i] = pm * dorfman_ad(p, GeneralisedVector::from_stacked(vs[i])) * pp;
  }
  TraceResiduals r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec& u = us[i];
      const Vec& v = vs[j];
      Vec vu = dorfman_ad(p, GeneralisedVector::from_stacked(v)) * u;
      Vec uv = dorfman_ad(p, GeneralisedVector::from_stacked(u)) * v;
      double a = 2.0 * (gv[j] * gu[i]).trace() - delta.dot(gg * vu);
      double b = delta.dot(uv);
      r.eq_a = std::max(r.eq_a, std::abs(a));
      r.eq_b = std::max(r.eq_b, std::abs(b));
    }
  const double s = p.scale();
  r.eq_a /= s;
  r.eq_b /= s;
  return r;
}

Subspace admissible_divergences(const LieAlgebra& alg, const ScalarProduct& g, const KForm& h, double tol) {
  const int n = alg.dim();
  GEProblem p0{alg, g, h, Divergence::zero(n), tol};
  auto rep = einstein_residuals(p0);
  if (rep.total >= tol)
    throw Error(ErrorKind::Precondition, "admissible_divergences: the problem with zero divergence is not generalised Einstein",
                rep.total);
  std::vector<Vec> rows;
  auto push = [&](const Vec& a, const Vec& b) {
    Vec r(2 * n);
    r << a, b;
    rows.push_back(r);
  };
  const Vec zero = Vec::Zero(n);
  for (const Vec& x : polarized(n)) {
    Vec w = adjoint_endo(g, alg.ad(x)) * x;
    push(w, zero);
    push(zero, g.flat(w));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec br = alg.bracket_basis(i, j);
      Vec hv = h.interior(Vec::Unit(n, i)).interior(Vec::Unit(n, j)).as_vector();
      push(br, hv);
      push(g.sharp(hv), g.flat(br));
    }
  Mat a(static_cast<int>(rows.size()), 2 * n);
  for (std::size_t r = 0; r < rows.size(); ++r) a.row(static_cast<int>(r)) = rows[r].transpose();
  return Subspace::kernel(a);
}

// ---------------------------------------------------------------- codim 1, 2

namespace {

// Problem data re-expressed in an adapted basis: the ideal first, then the
// transversal vectors.
struct Adapted {
  LieAlgebra alg;
  Mat gm;
  KForm h;
  int m = 0;  // dim of ideal

  LieAlgebra ideal_algebra() const {
    std::vector<double> c(static_cast<std::size_t>(m) * m * m);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) c[(k * m + i) * m + j] = alg.c(k, i, j);
    return LieAlgebra(m, std::move(c));
  }
  Mat ad_restricted(int x) const {
    Mat f(m, m);
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) f(k, j) = alg.c(k, x, j);
    return f;
  }
  Mat ideal_embed() const { return Mat::Identity(alg.dim(), m); }
};

Adapted adapt(const GEProblem& p, const Subspace& ideal, int codim, std::vector<int>& signs) {
  Mat pm = adapted_basis(p, ideal, codim, &signs);
  Adapted a;
  a.alg = p.algebra.change_basis(pm);
  a.gm = pm.transpose() * p.metric.matrix() * pm;
  a.h = p.h.pullback(pm);
  a.m = p.dim() - codim;
  return a;
}

double sq(double x) { return x * x; }

}  // namespace

Mat adapted_basis(const GEProblem& p, const Subspace& ideal, int codim, std::vector<int>* signs) {
  const int n = p.dim();
  if (ideal.ambient_dim() != n || ideal.dim() != n - codim)
    throw Error(ErrorKind::Dimension, "ideal has the wrong dimension");
  double def = ideal_defect(p.algebra, ideal);
  if (def > 1e-8 * p.scale()) throw Error(ErrorKind::Precondition, "subspace is not an ideal", def);
  const Mat& b = ideal.basis();
  // Restricted metric must be non-degenerate.
  ScalarProduct gi(b.transpose() * p.metric.matrix() * b, 1e-10);
  (void)gi;
  Mat w = p.metric.inverse() * ideal.complement().basis();  // spans the g-orthogonal complement
  OrthonormalFrame fr = orthonormal_frame(Mat(w.transpose() * p.metric.matrix() * w));
  Mat pm(n, n);
  pm << b, w * fr.basis;
  if (signs) *signs = fr.signs;
  return pm;
}

std::array<double, 5> codim1_residuals(const GEProblem& p, const Subspace& ideal) {
  std::vector<int> signs;
  Adapted ad = adapt(p, ideal, 1, signs);
  const int m = ad.m, n = m + 1;
  const double eps = signs[0];
  ScalarProduct ga(ad.gm.topLeftCorner(m, m));
  LieAlgebra a = ad.ideal_algebra();
  Mat f = ad.ad_restricted(m);
  Mat emb = ad.ideal_embed();
  KForm hp = ad.h.pullback(emb);
  KForm bf = ad.h.interior(Vec::Unit(n, m)).pullback(emb) * eps;
  Mat fs = sym_antisym_parts(ga, f).first;
  Mat fstar = adjoint_endo(ga, f);
  Mat bend = two_form_endo(ga, bf);
  Mat bm = bf.as_matrix();

  std::array<double, 5> r{};
  r[0] = std::abs(2.0 * tensor_inner(ga, fs, fs) + tensor_inner(ga, bf, bf));
  std::vector<Mat> astar(m), hend(m);
  for (int y = 0; y < m; ++y) {
    Vec ey = Vec::Unit(m, y);
    Mat sy = sym_antisym_parts(ga, a.ad(ey)).first;
    r[1] = std::max(r[1], std::abs(2.0 * tensor_inner(ga, fs, sy) + eps * tensor_inner(ga, bf, hp.interior(ey))));
    astar[y] = ad_star(a, ga, ey);
    hend[y] = h_endo(ga, hp, ey);
    r[3] = std::max(r[3], std::abs(tensor_inner(ga, astar[y], bend)));
  }
  Mat comm = fstar * f - f * fstar;
  for (const Vec& y : polarized(m)) {
    Mat s = sym_antisym_parts(ga, a.ad(y)).first;
    Mat as = ad_star(a, ga, y);
    KForm hy = hp.interior(y);
    KForm by = bf.interior(y);
    double v = 4.0 * tensor_inner(ga, s, s) - tensor_inner(ga, as, as) + 2.0 * eps * ga(comm * y, y) +
               2.0 * tensor_inner(ga, hy, hy) + 2.0 * eps * tensor_inner(ga, by, by);
    r[2] = std::max(r[2], std::abs(v));
  }
  for (int y = 0; y < m; ++y)
    for (int z = y + 1; z < m; ++z) {
      Vec fy = fstar.col(y), fz = fstar.col(z);
      double v = tensor_inner(ga, astar[y], hend[z]) - 2.0 * bm.row(z).dot(fy) -
                 (tensor_inner(ga, astar[z], hend[y]) - 2.0 * bm.row(y).dot(fz));
      r[4] = std::max(r[4], std::abs(v));
    }
  const double s = p.scale();
  for (double& v : r) v /= s;
  return r;
}

std::array<double, 9> codim2_residuals(const GEProblem& p, const Subspace& ideal) {
  std::vector<int> signs;
  Adapted ad = adapt(p, ideal, 2, signs);
  const int m = ad.m, n = m + 2, x1 = m, x2 = m + 1;
  const double e1 = signs[0], e2 = signs[1];
  ScalarProduct gn(ad.gm.topLeftCorner(m, m));
  LieAlgebra nalg = ad.ideal_algebra();
  Mat emb = ad.ideal_embed();
  Mat f1 = ad.ad_restricted(x1), f2 = ad.ad_restricted(x2);
  const double a = ad.alg.c(x1, x1, x2), b = ad.alg.c(x2, x1, x2);
  Vec u(m);
  for (int k = 0; k < m; ++k) u(k) = ad.alg.c(k, x1, x2);
  KForm hp = ad.h.pullback(emb);
  KForm b1 = ad.h.interior(Vec::Unit(n, x1)).pullback(emb) * e1;
  KForm b2 = ad.h.interior(Vec::Unit(n, x2)).pullback(emb) * e2;
  KForm cf = ad.h.interior(Vec::Unit(n, x1)).interior(Vec::Unit(n, x2)).pullback(emb) * (e1 * e2);
  Vec cv = cf.as_vector();
  Vec csharp = gn.sharp(cv);
  Vec uflat = gn.flat(u);
  const double uu = gn(u, u), cc = tensor_inner(gn, cf, cf);

  Mat f1s = sym_antisym_parts(gn, f1).first, f2s = sym_antisym_parts(gn, f2).first;
  Mat f1t = adjoint_endo(gn, f1), f2t = adjoint_endo(gn, f2);
  Mat b1m = b1.as_matrix(), b2m = b2.as_matrix();
  Mat b1e = two_form_endo(gn, b1), b2e = two_form_endo(gn, b2);

  std::array<double, 9> r{};
  r[0] = std::abs(2.0 * tensor_inner(gn, f1s, f1s) + tensor_inner(gn, b1, b1) + 2.0 * b * b + e2 * (uu + cc));
  r[1] = std::abs(2.0 * tensor_inner(gn, f2s, f2s) + tensor_inner(gn, b2, b2) + 2.0 * a * a + e1 * (uu + cc));
  r[2] = std::abs(2.0 * tensor_inner(gn, f1s, f2s) + e1 * e2 * tensor_inner(gn, b1, b2) - 2.0 * a * b);

  std::vector<Mat> astar(m), hend(m);
  for (int y = 0; y < m; ++y) {
    Vec ey = Vec::Unit(m, y);
    Mat sy = sym_antisym_parts(gn, nalg.ad(ey)).first;
    KForm hy = hp.interior(ey);
    double v4 = 2.0 * tensor_inner(gn, f1s, sy) + e1 * tensor_inner(gn, b1, hy) -
                e2 * (a * uflat(y) + gn(u, f2 * ey) + e1 * cv.dot(gn.sharp(b2m.row(y).transpose())));
    double v5 = 2.0 * tensor_inner(gn, f2s, sy) + e2 * tensor_inner(gn, b2, hy) -
                e1 * (b * uflat(y) - gn(u, f1 * ey) - e2 * cv.dot(gn.sharp(b1m.row(y).transpose())));
    r[3] = std::max(r[3], std::abs(v4));
    r[4] = std::max(r[4], std::abs(v5));
    astar[y] = ad_star(nalg, gn, ey);
    hend[y] = h_endo(gn, hp, ey);
    double v7 = tensor_inner(gn, astar[y], b1e) + 2.0 * gn(csharp, f2t * ey) - 2.0 * a * cv(y);
    double v8 = tensor_inner(gn, astar[y], b2e) - 2.0 * gn(csharp, f1t * ey) - 2.0 * b * cv(y);
    r[6] = std::max(r[6], std::abs(v7));
    r[7] = std::max(r[7], std::abs(v8));
  }
  Mat c1 = f1t * f1 - f1 * f1t, c2 = f2t * f2 - f2 * f2t;
  for (const Vec& y : polarized(m)) {
    Mat s = sym_antisym_parts(gn, nalg.ad(y)).first;
    Mat as = ad_star(nalg, gn, y);
    KForm hy = hp.interior(y), by1 = b1.interior(y), by2 = b2.interior(y);
    double v = 4.0 * tensor_inner(gn, s, s) - tensor_inner(gn, as, as) + 2.0 * tensor_inner(gn, hy, hy) +
               2.0 * e1 * gn(c1 * y, y) + 2.0 * e1 * tensor_inner(gn, by1, by1) + 2.0 * e2 * gn(c2 * y, y) +
               2.0 * e2 * tensor_inner(gn, by2, by2) + 2.0 * e1 * e2 * (sq(cv.dot(y)) - sq(uflat.dot(y)));
    r[5] = std::max(r[5], std::abs(v));
  }
  for (int y = 0; y < m; ++y)
    for (int z = y + 1; z < m; ++z) {
      auto half = [&](int p1, int p2) {
        return tensor_inner(gn, astar[p1], hend[p2]) - 2.0 * b1m.row(p2).dot(f1t.col(p1)) -
               2.0 * b2m.row(p2).dot(f2t.col(p1));
      };
      double v = half(y, z) - half(z, y) + 2.0 * uflat(y) * cv(z) - 2.0 * uflat(z) * cv(y);
      r[8] = std::max(r[8], std::abs(v));
    }
  const double s = p.scale();
  for (double& v : r) v /= s;
  return r;
}

// ---------------------------------------------------------------- Riemannian

ReductionReport riemannian_reduction_check(const GEProblem& p, double tol) {
  if (!p.metric.is_riemannian()) throw Error(ErrorKind::Precondition, "riemannian_reduction_check needs a positive definite metric");
  const int n = p.dim();
  const auto& g = p.metric;
  const auto& alg = p.algebra;
  const double sc = p.scale();
  ReductionReport r;
  StructureInfo info = structure_analysis(alg);
  r.commutator = info.commutator_ideal;
  Mat hb = g.inverse() * r.commutator.complement().basis();
  r.h = Subspace::span(hb);
  const Mat& H = r.h.basis();
  const Mat& D = r.commutator.basis();

  double worst = 0;
  for (int i = 0; i < H.cols(); ++i)
    for (int j = i + 1; j < H.cols(); ++j) worst = std::max(worst, alg.bracket(H.col(i), H.col(j)).cwiseAbs().maxCoeff());
  r.h_abelian = worst <= tol * sc;

  worst = 0;
  for (int i = 0; i < H.cols(); ++i) {
    Mat a = alg.ad(H.col(i));
    Mat m = D.transpose() * g.matrix() * a * D;  // g(ad_X Y, Z) on g'
    worst = std::max(worst, sup_norm(m + m.transpose()));
  }
  r.h_acts_skew = worst <= tol * sc;

  worst = 0;
  for (int i = 0; i < H.cols(); ++i) worst = std::max(worst, p.h.interior(H.col(i)).max_abs());
  r.h_hooks_H_zero = worst <= tol * sc;

  worst = 0;
  for (int i = 0; i < H.cols(); ++i)
    for (int j = 0; j < D.cols(); ++j) {
      Vec br = alg.bracket(H.col(i), D.col(j));
      worst = std::max({worst, std::abs(p.delta.on_vectors.dot(br)), std::abs(p.delta.on_covectors.dot(g.flat(br)))});
    }
  r.delta_constraint = worst <= tol * sc;

  const int m = r.commutator.dim();
  if (m == 0) {
    r.restricted_basis = Mat(n, 0);
    return r;
  }
  OrthonormalFrame fr = orthonormal_frame(Mat(D.transpose() * g.matrix() * D));
  Mat q = D * fr.basis;
  r.restricted_basis = q;
  Divergence d{q.transpose() * p.delta.on_vectors, q.transpose() * g.matrix() * p.delta.on_covectors};
  r.restricted_problem = GEProblem{restrict_to(alg, q), ScalarProduct(q.transpose() * g.matrix() * q),
                                   p.h.pullback(q), d, p.tolerance};
  return r;
}

}  // namespace genein
