#include "genein/pseudo_metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace genein {

std::pair<int, int> signature_of(const Mat& sym, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  const Vec& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int p = 0, q = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol * scale) ++p;
    else if (ev(i) < -tol * scale) ++q;
  }
  return {p, q};
}

ScalarProduct::ScalarProduct(Mat g, double tol) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() == 0) throw Error(ErrorKind::Dimension, "metric must be square and non-empty");
  double asym = sup_norm(g_ - g_.transpose());
  if (asym > 1e-12 * (1.0 + sup_norm(g_))) throw Error(ErrorKind::Input, "metric is not symmetric", asym);
  sig_ = signature_of(g_, tol);
  if (sig_.first + sig_.second != dim()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(g_);
    throw Error(ErrorKind::DegenerateMetric, "metric is degenerate", es.eigenvalues().cwiseAbs().minCoeff());
  }
  ginv_ = g_.inverse();
  ginv_ = 0.5 * (ginv_ + ginv_.transpose()).eval();
}

ScalarProduct ScalarProduct::diagonal(const std::vector<double>& d) {
  Mat g = Mat::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return ScalarProduct(g);
}

Vec musical(const ScalarProduct& g, const Vec& x, Musical dir) {
  if (x.size() != g.dim()) throw Error(ErrorKind::Dimension, "musical: dimension mismatch");
  return dir == Musical::Flat ? g.flat(x) : g.sharp(x);
}

Mat adjoint_endo(const ScalarProduct& g, const Mat& f) { return g.inverse() * f.transpose() * g.matrix(); }

std::pair<Mat, Mat> sym_antisym_parts(const ScalarProduct& g, const Mat& f) {
  Mat fs = adjoint_endo(g, f);
  return {0.5 * (f + fs), 0.5 * (f - fs)};
}

Mat ad_star(const LieAlgebra& alg, const ScalarProduct& g, const Vec& x) {
  const int n = alg.dim();
  if (x.size() != n || g.dim() != n) throw Error(ErrorKind::Dimension, "ad_star: dimension mismatch");
  Vec gx = g.flat(x);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += alg.c(k, i, j) * gx(k);
      m(i, j) = s;
    }
  return g.inverse() * m.transpose();
}

Mat h_endo(const ScalarProduct& g, const KForm& h, const Vec& x) {
  if (h.degree() != 3) throw Error(ErrorKind::Dimension, "h_endo needs a 3-form");
  return g.inverse() * h.interior(x).as_matrix().transpose();
}

Mat two_form_endo(const ScalarProduct& g, const KForm& b) { return g.inverse() * b.as_matrix().transpose(); }

double tensor_inner(const ScalarProduct& g, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::Dimension, "tensor_inner: kind mismatch");
  return (a * adjoint_endo(g, b)).trace();
}

double tensor_inner(const ScalarProduct& g, const KForm& a, const KForm& b) {
  if (a.degree() != b.degree() || a.dim() != b.dim()) throw Error(ErrorKind::Dimension, "tensor_inner: kind mismatch");
  KForm raised = b.pullback(g.inverse());
  double s = 0;
  for (std::size_t t = 0; t < a.data().size(); ++t) s += a.data()[t] * raised.data()[t];
  double fact = 1;
  for (int i = 2; i <= a.degree(); ++i) fact *= i;
  return s / fact;
}

double tensor_inner_frame(const ScalarProduct& g, const OrthonormalFrame& fr, const Mat& a, const Mat& b) {
  double s = 0;
  for (int i = 0; i < fr.basis.cols(); ++i) s += fr.signs[i] * g(a * fr.basis.col(i), b * fr.basis.col(i));
  return s;
}

double tensor_inner_frame(const ScalarProduct&, const OrthonormalFrame& fr, const KForm& a, const KForm& b) {
  KForm pa = a.pullback(fr.basis), pb = b.pullback(fr.basis);
  const int n = pa.dim(), k = pa.degree();
  double s = 0;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k == 0) return pa.data()[0] * pb.data()[0];
  while (true) {
    int sign = 1;
    for (int v : idx) sign *= fr.signs[v];
    s += sign * pa.at(idx) * pb.at(idx);
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  return s;
}

OrthonormalFrame orthonormal_frame(const ScalarProduct& g, double tol) { return orthonormal_frame(g.matrix(), tol); }

OrthonormalFrame orthonormal_frame(const Mat& g, double tol) {
  const int n = static_cast<int>(g.rows());
  const double scale = std::max(1.0, sup_norm(g));
  std::vector<Vec> pool;
  for (int i = 0; i < n; ++i) pool.push_back(Vec::Unit(n, i));
  std::vector<Vec> out;
  std::vector<double> norms;
  while (!pool.empty()) {
    const int m = static_cast<int>(pool.size());
    Mat gram(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) gram(a, b) = pool[a].dot(g * pool[b]);
    int di = 0, oi = 0, oj = 0;
    double dbest = -1, obest = -1;
    for (int a = 0; a < m; ++a) {
      if (std::abs(gram(a, a)) > dbest) { dbest = std::abs(gram(a, a)); di = a; }
      for (int b = a + 1; b < m; ++b)
        if (std::abs(gram(a, b)) > obest) { obest = std::abs(gram(a, b)); oi = a; oj = b; }
    }
    Vec v;
    int drop;
    if (dbest >= obest) {
      v = pool[di];
      drop = di;
    } else {
      // All diagonal pivots small: a null pair, combine it.
      v = pool[oi] + (gram(oi, oj) > 0 ? 1.0 : -1.0) * pool[oj];
      drop = oi;
    }
    double gv = v.dot(g * v);
    if (std::abs(gv) <= tol * scale) throw Error(ErrorKind::DegenerateMetric, "orthonormal_frame: metric is degenerate", std::abs(gv));
    std::vector<Vec> next;
    for (int a = 0; a < m; ++a) {
      if (a == drop) continue;
      next.push_back(pool[a] - (v.dot(g * pool[a]) / gv) * v);
    }
    pool.swap(next);
    v /= std::sqrt(std::abs(gv));
    for (int i = 0; i < n; ++i)
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    out.push_back(v);
    norms.push_back(gv);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return (norms[a] < 0) > (norms[b] < 0); });
  OrthonormalFrame fr;
  fr.basis = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    fr.basis.col(i) = out[order[i]];
    fr.signs.push_back(norms[order[i]] < 0 ? -1 : 1);
  }
  return fr;
}

}  // namespace genein
