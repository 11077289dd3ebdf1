#include "genein/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace genein {

Mat Connection::along(const Vec& x) const {
  const int n = dim();
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (x(i) != 0.0) m += x(i) * nabla[i];
  return m;
}

Connection levi_civita(const LieAlgebra& g, const ScalarProduct& metric) {
  const int n = g.dim();
  if (metric.dim() != n) throw Error(ErrorKind::Dimension, "levi_civita: dimension mismatch");
  const Mat& gm = metric.matrix();
  // cl(k, i, j) = g([e_i, e_j], e_k)
  std::vector<double> cl(static_cast<std::size_t>(n) * n * n);
  auto at = [&](int k, int i, int j) -> double& { return cl[(k * n + i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec b = gm * g.bracket_basis(i, j);
      for (int k = 0; k < n; ++k) at(k, i, j) = b(k);
    }
  Connection c;
  c.nabla.assign(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    Mat low(n, n);  // low(k, j) = g(∇_i e_j, e_k)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) low(k, j) = 0.5 * (at(k, i, j) - at(i, j, k) + at(j, k, i));
    c.nabla[i] = metric.inverse() * low;
  }
  return c;
}

Connection bismut(const GEProblem& p, int sign) {
  Connection c = levi_civita(p.algebra, p.metric);
  const int n = p.dim();
  for (int i = 0; i < n; ++i) c.nabla[i] += (sign > 0 ? 0.5 : -0.5) * h_endo(p.metric, p.h, Vec::Unit(n, i));
  return c;
}

std::vector<std::vector<Mat>> curvature_tensor(const LieAlgebra& g, const Connection& c) {
  const int n = g.dim();
  std::vector<std::vector<Mat>> r(n, std::vector<Mat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r[i][j] = c.nabla[i] * c.nabla[j] - c.nabla[j] * c.nabla[i] - c.along(g.bracket_basis(i, j));
  return r;
}

Mat ricci_of(const std::vector<std::vector<Mat>>& r) {
  const int n = static_cast<int>(r.size());
  Mat ric = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0;
      for (int z = 0; z < n; ++z) s += r[z][a](z, b);
      ric(a, b) = s;
    }
  return ric;
}

CurvatureReport curvature_report(const LieAlgebra& g, const ScalarProduct& metric, double tol) {
  CurvatureReport rep;
  rep.riemann = curvature_tensor(g, levi_civita(g, metric));
  rep.ricci = ricci_of(rep.riemann);
  rep.scalar = (metric.inverse() * rep.ricci).trace();
  for (const auto& row : rep.riemann)
    for (const auto& m : row) rep.max_abs = std::max(rep.max_abs, sup_norm(m));
  const double s = 1.0 + g.max_abs();
  rep.is_flat = rep.max_abs < tol * s * s;
  return rep;
}

bool almost_abelian_flat_test(const ScalarProduct& metric_n, const Mat& f, double tol) {
  auto [fs, fa] = sym_antisym_parts(metric_n, f);
  const double scale = 1.0 + sup_norm(f);
  if (sup_norm(fs) < tol * scale) return true;
  Eigen::JacobiSVD<Mat> svd(fs, Eigen::ComputeFullU);
  const Vec& sv = svd.singularValues();
  if (sv.size() > 1 && sv(1) > tol * scale) return false;
  Vec y = svd.matrixU().col(0);
  const double null_defect = std::abs(metric_n(y, y)) / (1.0 + sup_norm(metric_n.matrix()));
  if (null_defect > tol) return false;
  return (fa * y).cwiseAbs().maxCoeff() < tol * scale;
}

Mat bismut_ricci(const GEProblem& p, int sign) { return ricci_of(curvature_tensor(p.algebra, bismut(p, sign))); }

double torsion_defect(const LieAlgebra& g, const Connection& c) {
  const int n = g.dim();
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec t = c.nabla[i].col(j) - c.nabla[j].col(i) - g.bracket_basis(i, j);
      worst = std::max(worst, t.cwiseAbs().maxCoeff());
    }
  return worst;
}

double metric_defect(const ScalarProduct& metric, const Connection& c) {
  double worst = 0;
  for (const Mat& a : c.nabla) {
    Mat m = metric.matrix() * a;  // g(∇ e_j, e_k) as (k, j)
    worst = std::max(worst, sup_norm(m + m.transpose()));
  }
  return worst;
}

Vec trace_form(const LieAlgebra& g) {
  const int n = g.dim();
  Vec t(n);
  for (int i = 0; i < n; ++i) t(i) = g.ad(Vec::Unit(n, i)).trace();
  return t;
}

double soliton_residual(const LieAlgebra& g, const ScalarProduct& metric) {
  const int n = g.dim();
  Connection c = levi_civita(g, metric);
  Mat ric = ricci_of(curvature_tensor(g, c));
  Vec tau = trace_form(g);
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) worst = std::max(worst, std::abs(ric(a, b) - tau.dot(c.nabla[a].col(b))));
  const double s = 1.0 + g.max_abs();
  return worst / (s * s);
}

}  // namespace genein
