#include "genein/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace genein {

const char* type_name(CanonicalType t) {
  switch (t) {
    case CanonicalType::First: return "first";
    case CanonicalType::Second: return "second";
    case CanonicalType::Third: return "third";
    case CanonicalType::Fourth: return "fourth";
  }
  return "?";
}

namespace {
void need(const std::vector<double>& p, std::size_t k, const char* what) {
  if (p.size() != k) throw Error(ErrorKind::Input, std::string("block ") + what + ": wrong number of parameters");
}
}  // namespace

Mat block(BlockName name, const std::vector<double>& p) {
  const double r = 1.0 / std::sqrt(2.0);
  Mat m;
  switch (name) {
    case BlockName::L1:
      need(p, 2, "L1");
      m.resize(2, 2);
      m << p[0], -p[1], p[1], p[0];
      return m;
    case BlockName::L2: {
      need(p, 2, "L2");
      if (p[1] != 1.0 && p[1] != -1.0) throw Error(ErrorKind::Input, "block L2: epsilon must be -1 or 1");
      m.resize(2, 2);
      m << 0.5 + p[0], 0.5, -0.5, -0.5 + p[0];
      return p[1] * m;
    }
    case BlockName::L3:
      need(p, 1, "L3");
      m.resize(3, 3);
      m << p[0], -r, 0, r, p[0], r, 0, r, p[0];
      return m;
    case BlockName::M3: {
      need(p, 1, "M3");
      const double s = p[0];
      m.resize(3, 3);
      m << 0, 0, -1 + s, 0, 0, -1 - s, -1 + s, 1 + s, 0;
      return m;
    }
    case BlockName::M4: {
      need(p, 2, "M4");
      const double s = p[0], t = p[1];
      m.resize(4, 4);
      m << 0, 0, -1 + s, t, 0, 0, -1 - s, t, -1 + s, 1 + s, 0, 0, t, -t, 0, 0;
      return m;
    }
  }
  throw Error(ErrorKind::Input, "unknown block");
}

Mat block_diag(const std::vector<Mat>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.rows());
  Mat m = Mat::Zero(n, n);
  int o = 0;
  for (const auto& b : blocks) {
    m.block(o, o, b.rows(), b.cols()) = b;
    o += static_cast<int>(b.rows());
  }
  return m;
}

ScalarProduct lorentz(int n) {
  std::vector<double> d(n, 1.0);
  d[0] = -1.0;
  return ScalarProduct::diagonal(d);
}

CanonicalType classify_symmetric(const ScalarProduct& metric, const Mat& f, double tol) {
  const int n = metric.dim();
  if (f.rows() != n || f.cols() != n) throw Error(ErrorKind::Dimension, "classify_symmetric: dimension mismatch");
  auto sig = metric.signature();
  if (std::min(sig.first, sig.second) != 1) throw Error(ErrorKind::Precondition, "classify_symmetric: metric is not Lorentzian");
  const double s = 1.0 + sup_norm(f);
  double asym = sup_norm(f - adjoint_endo(metric, f));
  if (asym > tol * s) throw Error(ErrorKind::Precondition, "classify_symmetric: f is not symmetric", asym);

  const Mat fh = f / s;
  Eigen::EigenSolver<Mat> es(fh, false);
  const Eigen::VectorXcd ev = es.eigenvalues();
  // Jordan blocks of size k split eigenvalues by ~eps^{1/k}; cluster wider.
  const double radius = std::max(tol, 1e-4);
  for (int i = 0; i < n; ++i)
    if (std::abs(ev(i).imag()) > radius) return CanonicalType::Second;

  std::vector<double> re(n);
  for (int i = 0; i < n; ++i) re[i] = ev(i).real();
  std::sort(re.begin(), re.end());
  std::vector<std::pair<double, int>> clusters;  // (mean, multiplicity)
  for (int i = 0; i < n;) {
    int j = i;
    double sum = 0;
    while (j < n && re[j] - re[i] <= radius) sum += re[j++];
    clusters.push_back({sum / (j - i), j - i});
    i = j;
  }
  // Index of each eigenvalue from products killing the other generalized
  // eigenspaces: smallest k with (f - λ)^k Π_{μ≠λ} (f - μ)^{m_μ} = 0.
  int max_index = 1;
  const Mat id = Mat::Identity(n, n);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    Mat p = id;
    for (std::size_t d = 0; d < clusters.size(); ++d) {
      if (d == c) continue;
      for (int r = 0; r < clusters[d].second; ++r) p = (fh - clusters[d].first * id) * p;
    }
    const double ref = p.norm();
    Mat q = p;
    int k = 0;
    while (k < clusters[c].second) {
      q = (fh - clusters[c].first * id) * q;
      ++k;
      if (q.norm() <= 1e-7 * ref) break;
    }
    max_index = std::max(max_index, k);
  }
  if (max_index >= 3) return CanonicalType::Fourth;
  if (max_index == 2) return CanonicalType::Third;
  return CanonicalType::First;
}

Mat canonical_matrix(CanonicalType t, const std::vector<double>& p) {
  std::vector<Mat> blocks;
  std::size_t rest = 0;
  switch (t) {
    case CanonicalType::First: rest = 0; break;
    case CanonicalType::Second:
      if (p.size() < 2) throw Error(ErrorKind::Input, "second type needs alpha, beta");
      blocks.push_back(block(BlockName::L1, {p[0], p[1]}));
      rest = 2;
      break;
    case CanonicalType::Third:
      if (p.size() < 2) throw Error(ErrorKind::Input, "third type needs gamma, epsilon");
      blocks.push_back(block(BlockName::L2, {p[0], p[1]}));
      rest = 2;
      break;
    case CanonicalType::Fourth:
      if (p.empty()) throw Error(ErrorKind::Input, "fourth type needs tau");
      blocks.push_back(block(BlockName::L3, {p[0]}));
      rest = 1;
      break;
  }
  for (std::size_t i = rest; i < p.size(); ++i) blocks.push_back(Mat::Constant(1, 1, p[i]));
  if (blocks.empty()) throw Error(ErrorKind::Input, "empty canonical parameter list");
  return block_diag(blocks);
}

double trfs2_gap(CanonicalType t, const std::vector<double>& p) {
  auto tail = [&](std::size_t from) {
    double s = 0;
    for (std::size_t i = from; i < p.size(); ++i) s += p[i] * p[i];
    return s;
  };
  switch (t) {
    case CanonicalType::First:
      if (p.empty()) throw Error(ErrorKind::Input, "first type needs at least one entry");
      return tail(0);
    case CanonicalType::Second:
      if (p.size() < 2) throw Error(ErrorKind::Input, "second type needs alpha, beta");
      return 2.0 * (p[0] * p[0] - p[1] * p[1]) + tail(2);
    case CanonicalType::Third:
      if (p.size() < 2) throw Error(ErrorKind::Input, "third type needs gamma, epsilon");
      return 2.0 * p[0] * p[0] + tail(2);
    case CanonicalType::Fourth:
      if (p.empty()) throw Error(ErrorKind::Input, "fourth type needs tau");
      return 3.0 * p[0] * p[0] + tail(1);
  }
  return 0;
}

double verify_normal_form(const ScalarProduct& metric, const Mat& f, const Mat& claimed, const OrthonormalFrame& fr,
                          double tol) {
  const int n = metric.dim();
  Mat gram = fr.basis.transpose() * metric.matrix() * fr.basis;
  Mat want = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) want(i, i) = fr.signs[i];
  double d = sup_norm(gram - want);
  if (d > tol * (1.0 + sup_norm(metric.matrix()))) throw Error(ErrorKind::Precondition, "frame is not orthonormal", d);
  return sup_norm(fr.basis.lu().solve(f * fr.basis) - claimed);
}

}  // namespace genein
