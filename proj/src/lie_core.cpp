#include "genein/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace genein {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Antisymmetry: return "antisymmetry";
    case ErrorKind::Jacobi: return "jacobi";
    case ErrorKind::NotClosed: return "dH != 0";
    case ErrorKind::DegenerateMetric: return "degenerate metric";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::UnknownName: return "unknown name";
  }
  return "?";
}

namespace {

int perm_sign(std::vector<int> v) {
  int s = 1;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (v[a] == v[b]) return 0;
      if (v[a] > v[b]) s = -s;
    }
  return s;
}

// Calls fn on every strictly increasing k-tuple drawn from 0..n-1.
template <class Fn>
void for_each_sorted(int n, int k, Fn&& fn) {
  if (k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) return;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

}  // namespace

// ---------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(int dim) : n_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim <= 0) throw Error(ErrorKind::Dimension, "dimension must be positive");
}

LieAlgebra::LieAlgebra(int dim, std::vector<double> constants) : n_(dim), c_(std::move(constants)) {
  if (dim <= 0) throw Error(ErrorKind::Dimension, "dimension must be positive");
  if (c_.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw Error(ErrorKind::Dimension, "structure constant array has wrong size");
  double worst = 0;
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) worst = std::max(worst, std::abs(c(k, i, j) + c(k, j, i)));
  if (worst > 1e-12 * (1.0 + max_abs()))
    throw Error(ErrorKind::Antisymmetry, "structure constants are not antisymmetric", worst);
}

double LieAlgebra::max_abs() const {
  double m = 0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_) throw Error(ErrorKind::Dimension, "bracket: dimension mismatch");
  return ad(x) * y;
}

Vec LieAlgebra::bracket_basis(int i, int j) const {
  Vec r(n_);
  for (int k = 0; k < n_; ++k) r(k) = c(k, i, j);
  return r;
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != n_) throw Error(ErrorKind::Dimension, "ad: dimension mismatch");
  Mat m = Mat::Zero(n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < n_; ++j) m(k, j) += c(k, i, j) * x(i);
    }
  return m;
}

LieAlgebra LieAlgebra::change_basis(const Mat& p) const {
  if (p.rows() != n_ || p.cols() != n_) throw Error(ErrorKind::Dimension, "change_basis: need square n x n");
  Eigen::FullPivLU<Mat> lu(p);
  if (!lu.isInvertible()) throw Error(ErrorKind::Input, "change_basis: singular matrix");
  std::vector<double> out(c_.size(), 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Vec b = lu.solve(bracket(p.col(i), p.col(j)));
      for (int k = 0; k < n_; ++k) out[(k * n_ + i) * n_ + j] = b(k);
    }
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        double a = 0.5 * (out[(k * n_ + i) * n_ + j] - out[(k * n_ + j) * n_ + i]);
        out[(k * n_ + i) * n_ + j] = a;
        out[(k * n_ + j) * n_ + i] = -a;
      }
  return LieAlgebra(n_, std::move(out));
}

LieAlgebra LieAlgebra::almost_abelian(const Mat& f) {
  const int m = static_cast<int>(f.rows());
  if (f.cols() != m) throw Error(ErrorKind::Dimension, "almost_abelian: f must be square");
  const int n = m + 1;
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) {
      c[(k * n + m) * n + j] = f(k, j);
      c[(k * n + j) * n + m] = -f(k, j);
    }
  return LieAlgebra(n, std::move(c));
}

LieAlgebra new_lie_algebra(int dim, const std::vector<Bracket>& brackets) {
  if (dim <= 0) throw Error(ErrorKind::Dimension, "dimension must be positive");
  std::map<std::tuple<int, int, int>, double> seen;  // keyed with i<j, value for [e_i,e_j]
  for (const auto& b : brackets) {
    if (b.i < 1 || b.i > dim || b.j < 1 || b.j > dim || b.k < 1 || b.k > dim) {
      std::ostringstream os;
      os << "bracket index out of range in (" << b.i << "," << b.j << "," << b.k << ")";
      throw Error(ErrorKind::Input, os.str());
    }
    if (b.i == b.j) throw Error(ErrorKind::Antisymmetry, "bracket entry with i == j");
    const bool swap = b.i > b.j;
    auto key = std::make_tuple(std::min(b.i, b.j), std::max(b.i, b.j), b.k);
    double v = swap ? -b.value : b.value;
    auto it = seen.find(key);
    if (it != seen.end() && it->second != v) {
      std::ostringstream os;
      os << "conflicting entries for [e" << b.i << ",e" << b.j << "] on e" << b.k;
      throw Error(ErrorKind::Antisymmetry, os.str(), std::abs(it->second - v));
    }
    seen[key] = v;
  }
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (const auto& [key, v] : seen) {
    auto [i, j, k] = key;
    c[((k - 1) * dim + (i - 1)) * dim + (j - 1)] = v;
    c[((k - 1) * dim + (j - 1)) * dim + (i - 1)] = -v;
  }
  return LieAlgebra(dim, std::move(c));
}

LieAlgebra from_differentials(int dim, const std::vector<DiffTerm>& terms) {
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (const auto& t : terms) {
    if (t.i < 1 || t.j < 1 || t.k < 1 || t.i > dim || t.j > dim || t.k > dim || t.i == t.j)
      throw Error(ErrorKind::Input, "differential term out of range");
    int k = t.k - 1, i = t.i - 1, j = t.j - 1;
    c[(k * dim + i) * dim + j] -= t.value;
    c[(k * dim + j) * dim + i] += t.value;
  }
  return LieAlgebra(dim, std::move(c));
}

double jacobi_residual(const LieAlgebra& g) {
  const int n = g.dim();
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec s = Vec::Zero(n);
        // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
        for (int m = 0; m < n; ++m) {
          double jk = g.c(m, j, k), ki = g.c(m, k, i), ij = g.c(m, i, j);
          if (jk == 0 && ki == 0 && ij == 0) continue;
          for (int l = 0; l < n; ++l) s(l) += jk * g.c(l, i, m) + ki * g.c(l, j, m) + ij * g.c(l, k, m);
        }
        worst = std::max(worst, s.cwiseAbs().maxCoeff());
      }
  return worst;
}

Mat ad(const LieAlgebra& g, const Vec& x) { return g.ad(x); }

// ---------------------------------------------------------------- KForm

KForm::KForm(int dim, int degree) : n_(dim), k_(degree) {
  if (dim <= 0 || degree < 0) throw Error(ErrorKind::Dimension, "KForm: bad dimension or degree");
  std::size_t sz = 1;
  for (int a = 0; a < degree; ++a) sz *= static_cast<std::size_t>(dim);
  data_.assign(sz, 0.0);
}

std::size_t KForm::flat_index(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int v : idx) f = f * n_ + v;
  return f;
}

double KForm::at(std::initializer_list<int> idx) const { return at(std::vector<int>(idx)); }

double KForm::at(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != k_) throw Error(ErrorKind::Dimension, "KForm::at: wrong arity");
  return data_[flat_index(idx)];
}

void KForm::set(const std::vector<int>& idx, double value) {
  if (static_cast<int>(idx.size()) != k_) throw Error(ErrorKind::Dimension, "KForm::set: wrong arity");
  std::vector<int> p = idx;
  std::sort(p.begin(), p.end());
  if (std::adjacent_find(p.begin(), p.end()) != p.end()) {
    if (value != 0.0) throw Error(ErrorKind::Antisymmetry, "KForm::set: repeated index with nonzero value");
    return;
  }
  const int s0 = perm_sign(idx);
  do {
    data_[flat_index(p)] = s0 * perm_sign(p) * value;
  } while (std::next_permutation(p.begin(), p.end()));
}

void KForm::add(const std::vector<int>& idx, double value) { set(idx, at(idx) + value); }

double KForm::max_abs() const {
  double m = 0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

KForm KForm::interior(const Vec& x) const {
  if (k_ == 0) throw Error(ErrorKind::Dimension, "interior of a 0-form");
  if (x.size() != n_) throw Error(ErrorKind::Dimension, "interior: dimension mismatch");
  KForm r(n_, k_ - 1);
  const std::size_t stride = r.data_.size();
  for (int i = 0; i < n_; ++i) {
    if (x(i) == 0.0) continue;
    for (std::size_t s = 0; s < stride; ++s) r.data_[s] += x(i) * data_[i * stride + s];
  }
  return r;
}

KForm KForm::pullback(const Mat& p) const {
  const int m = static_cast<int>(p.cols());
  if (p.rows() != n_) throw Error(ErrorKind::Dimension, "pullback: dimension mismatch");
  // Apply p slot by slot; intermediate arrays mix dims m and n.
  std::vector<double> cur = data_;
  std::vector<int> dims(k_, n_);
  for (int slot = 0; slot < k_; ++slot) {
    std::size_t before = 1, after = 1;
    for (int a = 0; a < slot; ++a) before *= dims[a];
    for (int a = slot + 1; a < k_; ++a) after *= dims[a];
    std::vector<double> nxt(before * m * after, 0.0);
    for (std::size_t b = 0; b < before; ++b)
      for (int i = 0; i < n_; ++i)
        for (int a = 0; a < m; ++a) {
          double w = p(i, a);
          if (w == 0.0) continue;
          const double* src = &cur[(b * n_ + i) * after];
          double* dst = &nxt[(b * m + a) * after];
          for (std::size_t t = 0; t < after; ++t) dst[t] += w * src[t];
        }
    cur.swap(nxt);
    dims[slot] = m;
  }
  KForm r(m, k_);
  r.data_ = std::move(cur);
  return r;
}

Vec KForm::as_vector() const {
  if (k_ != 1) throw Error(ErrorKind::Dimension, "as_vector needs a 1-form");
  return Eigen::Map<const Vec>(data_.data(), n_);
}

Mat KForm::as_matrix() const {
  if (k_ != 2) throw Error(ErrorKind::Dimension, "as_matrix needs a 2-form");
  Mat m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = data_[i * n_ + j];
  return m;
}

KForm KForm::from_vector(const Vec& v) {
  KForm r(static_cast<int>(v.size()), 1);
  for (int i = 0; i < v.size(); ++i) r.data_[i] = v(i);
  return r;
}

KForm KForm::from_matrix(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  KForm r(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.data_[i * n + j] = 0.5 * (m(i, j) - m(j, i));
  return r;
}

KForm& KForm::operator+=(const KForm& o) {
  if (o.n_ != n_ || o.k_ != k_) throw Error(ErrorKind::Dimension, "KForm sum: shape mismatch");
  for (std::size_t a = 0; a < data_.size(); ++a) data_[a] += o.data_[a];
  return *this;
}

KForm& KForm::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::Dimension, "wedge: dimension mismatch");
  const int n = a.dim(), p = a.degree(), q = b.degree();
  KForm r(n, p + q);
  if (p + q > n) return r;
  for_each_sorted(n, p + q, [&](const std::vector<int>& idx) {
    double s = 0;
    // Shuffles: choose which positions feed a.
    for_each_sorted(p + q, p, [&](const std::vector<int>& pos) {
      std::vector<int> ia, ib, order;
      std::vector<bool> used(p + q, false);
      for (int x : pos) used[x] = true;
      for (int x : pos) { ia.push_back(idx[x]); order.push_back(x); }
      for (int x = 0; x < p + q; ++x)
        if (!used[x]) { ib.push_back(idx[x]); order.push_back(x); }
      s += perm_sign(order) * (p ? a.at(ia) : a.data()[0]) * (q ? b.at(ib) : b.data()[0]);
    });
    r.set(idx, s);
  });
  return r;
}

KForm basis_form(int dim, std::vector<int> idx1) {
  KForm r(dim, static_cast<int>(idx1.size()));
  for (int& v : idx1) {
    if (v < 1 || v > dim) throw Error(ErrorKind::Input, "basis_form: index out of range");
    --v;
  }
  r.set(idx1, 1.0);
  return r;
}

KForm ce_differential(const LieAlgebra& g, const KForm& w) {
  const int n = g.dim(), k = w.degree();
  if (w.dim() != n) throw Error(ErrorKind::Dimension, "ce_differential: dimension mismatch");
  if (k > n - 1) throw Error(ErrorKind::Dimension, "ce_differential: degree overflow");
  KForm r(n, k + 1);
  for_each_sorted(n, k + 1, [&](const std::vector<int>& idx) {
    double s = 0;
    std::vector<int> args(k);
    for (int a = 0; a < k + 1; ++a)
      for (int b = a + 1; b < k + 1; ++b) {
        int t = 1;
        for (int x = 0; x < k + 1; ++x)
          if (x != a && x != b) args[t++] = idx[x];
        double acc = 0;
        for (int m = 0; m < n; ++m) {
          double cm = g.c(m, idx[a], idx[b]);
          if (cm == 0.0) continue;
          args[0] = m;
          acc += cm * w.at(args);
        }
        s += (((a + b) % 2) ? -1.0 : 1.0) * acc;
      }
    r.set(idx, s);
  });
  return r;
}

// ---------------------------------------------------------------- Subspace

namespace {
double rank_threshold(const Vec& sv, double rel_tol) {
  double smax = sv.size() ? sv.maxCoeff() : 0.0;
  return std::max(rel_tol * smax, 1e-13);
}
}  // namespace

Subspace::Subspace(int ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {
  if (basis_.cols() > 0 && basis_.rows() != ambient) throw Error(ErrorKind::Dimension, "Subspace: basis rows != ambient");
  if (basis_.cols() == 0) basis_.resize(ambient, 0);
}

int numeric_rank(const Mat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  Vec sv = svd.singularValues();
  double thr = rank_threshold(sv, rel_tol);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) r += sv(i) > thr;
  return r;
}

Subspace Subspace::span(const Mat& columns, double rel_tol) {
  const int n = static_cast<int>(columns.rows());
  if (columns.cols() == 0) return zero(n);
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeFullU);
  Vec sv = svd.singularValues();
  double thr = rank_threshold(sv, rel_tol);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) r += sv(i) > thr;
  return Subspace(n, svd.matrixU().leftCols(r));
}

Subspace Subspace::kernel(const Mat& a, double rel_tol) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0) return full(n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  Vec sv = svd.singularValues();
  double thr = rank_threshold(sv, rel_tol);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) r += sv(i) > thr;
  return Subspace(n, svd.matrixV().rightCols(n - r));
}

Subspace Subspace::full(int n) { return Subspace(n, Mat::Identity(n, n)); }
Subspace Subspace::zero(int n) { return Subspace(n, Mat(n, 0)); }

double Subspace::distance(const Vec& v) const {
  Vec r = v - basis_ * (basis_.transpose() * v);
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

Subspace Subspace::complement() const {
  if (dim() == 0) return full(ambient_);
  return kernel(basis_.transpose());
}

// ---------------------------------------------------------------- analysis

namespace {
Subspace bracket_span(const LieAlgebra& g, const Mat& a, const Mat& b) {
  const int n = g.dim();
  Mat cols(n, a.cols() * b.cols());
  int t = 0;
  for (int i = 0; i < a.cols(); ++i) {
    Mat adx = g.ad(a.col(i));
    for (int j = 0; j < b.cols(); ++j) cols.col(t++) = adx * b.col(j);
  }
  return Subspace::span(cols);
}
}  // namespace

StructureInfo structure_analysis(const LieAlgebra& g, double tol) {
  const int n = g.dim();
  const double s = 1.0 + g.max_abs();
  double jr = jacobi_residual(g);
  if (jr > tol * s * s) throw Error(ErrorKind::Jacobi, "structure_analysis: Jacobi identity fails", jr);

  StructureInfo info;
  Mat id = Mat::Identity(n, n);
  info.commutator_ideal = bracket_span(g, id, id);

  Mat adstack(n * n, n);
  for (int i = 0; i < n; ++i) {
    Mat a = g.ad(id.col(i));
    adstack.col(i) = Eigen::Map<Vec>(a.data(), n * n);
  }
  info.center = Subspace::kernel(adstack);

  Subspace d = Subspace::full(n);
  for (int step = 0; step <= n && d.dim() > 0; ++step) {
    Subspace nx = bracket_span(g, d.basis(), d.basis());
    if (nx.dim() == d.dim()) break;
    d = nx;
  }
  info.is_solvable = d.dim() == 0;

  Subspace c = Subspace::full(n);
  for (int step = 0; step <= n && c.dim() > 0; ++step) {
    Subspace nx = bracket_span(g, id, c.basis());
    if (nx.dim() == c.dim()) break;
    c = nx;
  }
  info.is_nilpotent = c.dim() == 0;

  info.trace_form = Vec(n);
  for (int i = 0; i < n; ++i) info.trace_form(i) = g.ad(id.col(i)).trace();
  info.is_unimodular = info.trace_form.cwiseAbs().maxCoeff() <= tol * s;
  return info;
}

LieAlgebra restrict_to(const LieAlgebra& g, const Mat& basis) {
  const int m = static_cast<int>(basis.cols());
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(basis);
  std::vector<double> c(static_cast<std::size_t>(m) * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec b = cod.solve(g.bracket(basis.col(i), basis.col(j)));
      for (int k = 0; k < m; ++k) {
        c[(k * m + i) * m + j] = b(k);
        c[(k * m + j) * m + i] = -b(k);
      }
    }
  return LieAlgebra(m, std::move(c));
}

double ideal_defect(const LieAlgebra& g, const Subspace& s) {
  const int n = g.dim();
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    Mat a = g.ad(Vec::Unit(n, i));
    for (int j = 0; j < s.dim(); ++j) worst = std::max(worst, s.distance(a * s.basis().col(j)));
  }
  return worst;
}

}  // namespace genein
