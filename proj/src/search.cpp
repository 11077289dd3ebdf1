#include "genein/search.hpp"

#include <algorithm>
#include <cmath>

namespace genein {

// ---------------------------------------------------------------- scans

std::vector<Params> cartesian(const Grid& grid) {
  std::vector<Params> out(1);
  for (const auto& [name, vals] : grid) {
    if (vals.empty()) return {};
    std::vector<Params> next;
    next.reserve(out.size() * vals.size());
    for (const auto& p : out)
      for (double v : vals) {
        Params q = p;
        q[name] = v;
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

namespace {

ScanPoint eval_point(const std::string& id, const Params& p, const Tamper& tamper) {
  ScanPoint sp;
  sp.params = p;
  try {
    GEProblem pr = instantiate_family(id, p);
    if (tamper) tamper(pr);
    sp.residual = einstein_residuals(pr).total;
  } catch (const Error& e) {
    sp.ok = false;
    sp.error = std::string(error_kind_name(e.kind())) + ": " + e.what();
    sp.residual = std::numeric_limits<double>::quiet_NaN();
  }
  return sp;
}

}  // namespace

std::vector<ScanPoint> residual_scan_serial(const std::string& id, const Grid& grid, const Tamper& tamper) {
  family(id);  // unknown ids fail up front
  std::vector<ScanPoint> out;
  for (const auto& p : cartesian(grid)) out.push_back(eval_point(id, p, tamper));
  return out;
}

std::vector<ScanPoint> residual_scan(const std::string& id, const Grid& grid, const Tamper& tamper) {
  family(id);
  const std::vector<Params> pts = cartesian(grid);
  std::vector<ScanPoint> out(pts.size());
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = eval_point(id, pts[i], tamper);
  return out;
}

// --------------------------------------------------------------- random

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::array<int, 3>> triples(int n) {
  std::vector<std::array<int, 3>> t;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) t.push_back({i, j, k});
  return t;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return splitmix64(splitmix64(seed) ^ trial); }

NormalStream::NormalStream(std::uint64_t seed) : rng_(seed) {}

double NormalStream::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double NormalStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

FalsifySetup falsify_setup(const LieAlgebra& g, std::pair<int, int> sig) {
  const int n = g.dim();
  if (sig.first < 0 || sig.second < 0 || sig.first + sig.second != n)
    throw Error(ErrorKind::Precondition, "signature (" + std::to_string(sig.first) + "," + std::to_string(sig.second) +
                                             ") is infeasible in dimension " + std::to_string(n));
  FalsifySetup s;
  s.algebra = g;
  s.signature = sig;
  const auto tr = triples(n);
  const int m = static_cast<int>(tr.size());
  if (m == 0) {
    s.closed_basis = Mat::Zero(0, 0);
  } else if (n < 4) {
    s.closed_basis = Mat::Identity(m, m);
  } else {
    Mat d(static_cast<int>(std::pow(n, 4)), m);
    for (int c = 0; c < m; ++c) {
      KForm w = ce_differential(g, basis_form(n, {tr[c][0] + 1, tr[c][1] + 1, tr[c][2] + 1}));
      d.col(c) = Eigen::Map<const Vec>(w.data().data(), static_cast<int>(w.data().size()));
    }
    s.closed_basis = Subspace::kernel(d).basis();
  }
  s.commutator = structure_analysis(g).commutator_ideal.basis();
  return s;
}

GEProblem random_problem(const FalsifySetup& s, std::uint64_t stream_seed, const FalsifyOptions& opt) {
  const int n = s.algebra.dim();
  NormalStream rng(stream_seed);
  Mat d = Mat::Identity(n, n);
  for (int i = 0; i < s.signature.second; ++i) d(i, i) = -1.0;
  Mat gm;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw Error(ErrorKind::Precondition, "no admissible metric found");
    Mat p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = rng.normal();
    Eigen::JacobiSVD<Mat> svd(p);
    const Vec& sv = svd.singularValues();
    if (sv(n - 1) <= 0 || sv(0) / sv(n - 1) > 1e3) continue;
    gm = p.transpose() * d * p;
    gm = 0.5 * (gm + gm.transpose());
    gm /= sup_norm(gm);
    if (opt.commutator_gap > 0 && s.commutator.cols() > 0) {
      Mat r = s.commutator.transpose() * gm * s.commutator;
      Eigen::SelfAdjointEigenSolver<Mat> es(r);
      if (es.eigenvalues().cwiseAbs().minCoeff() < opt.commutator_gap) continue;
    }
    break;
  }
  KForm h(n, 3);
  if (s.closed_basis.cols() > 0) {
    Vec v(s.closed_basis.rows());
    for (int i = 0; i < v.size(); ++i) v(i) = rng.normal();
    Vec c = s.closed_basis * (s.closed_basis.transpose() * v);
    const auto tr = triples(n);
    for (int i = 0; i < c.size(); ++i) h.set({tr[i][0], tr[i][1], tr[i][2]}, c(i));
    const double mx = h.max_abs();
    if (mx > 0) {
      const double e = opt.h_log10_min + (opt.h_log10_max - opt.h_log10_min) * rng.uniform();
      h *= std::pow(10.0, e) / mx;
    }
  }
  GEProblem pr;
  pr.algebra = s.algebra;
  pr.metric = ScalarProduct(gm);
  pr.h = h;
  pr.delta = Divergence::zero(n);
  return pr;
}

GEProblem random_problem(const LieAlgebra& g, std::pair<int, int> sig, std::uint64_t stream_seed,
                         const FalsifyOptions& opt) {
  return random_problem(falsify_setup(g, sig), stream_seed, opt);
}

namespace {

FalsifyResult reduce(const FalsifySetup& s, const std::vector<double>& res, std::uint64_t seed, const FalsifyOptions& opt) {
  FalsifyResult r;
  r.trials = static_cast<long>(res.size());
  r.min_residual = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < res.size(); ++t)
    if (res[t] < r.min_residual) {
      r.min_residual = res[t];
      r.argmin_trial = static_cast<long>(t);
    }
  if (opt.inject) {
    const double ri = einstein_residuals(*opt.inject).total;
    if (ri <= r.min_residual) {
      r.min_residual = ri;
      r.argmin_trial = -1;
      r.argmin = *opt.inject;
      return r;
    }
  }
  if (r.argmin_trial >= 0) r.argmin = random_problem(s, trial_seed(seed, r.argmin_trial), opt);
  return r;
}

}  // namespace

FalsifyResult random_falsification_serial(const LieAlgebra& g, std::pair<int, int> sig, long trials, std::uint64_t seed,
                                          const FalsifyOptions& opt) {
  if (trials < 1) throw Error(ErrorKind::Precondition, "trials must be at least 1");
  FalsifySetup s = falsify_setup(g, sig);
  std::vector<double> res(trials);
  for (long t = 0; t < trials; ++t) res[t] = einstein_residuals(random_problem(s, trial_seed(seed, t), opt)).total;
  return reduce(s, res, seed, opt);
}

FalsifyResult random_falsification(const LieAlgebra& g, std::pair<int, int> sig, long trials, std::uint64_t seed,
                                   const FalsifyOptions& opt) {
  if (trials < 1) throw Error(ErrorKind::Precondition, "trials must be at least 1");
  FalsifySetup s = falsify_setup(g, sig);
  std::vector<double> res(trials);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < trials; ++t) res[t] = einstein_residuals(random_problem(s, trial_seed(seed, t), opt)).total;
  return reduce(s, res, seed, opt);
}

// --------------------------------------------------------------- Jordan

JordanStructure jordan_oracle(const Mat& f, double tol) {
  using CMat = Eigen::MatrixXcd;
  const int n = static_cast<int>(f.rows());
  if (f.cols() != n) throw Error(ErrorKind::Dimension, "jordan_oracle: matrix is not square");
  JordanStructure js;
  if (n == 0) return js;
  const double s = 1.0 + sup_norm(f);
  const Mat fh = f / s;
  Eigen::EigenSolver<Mat> es(fh, false);
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  const double radius = std::max(tol, 1e-4);
  // Greedy clustering around the first unassigned eigenvalue.
  std::vector<bool> used(n, false);
  std::vector<std::pair<std::complex<double>, int>> clusters;
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::complex<double> sum = 0;
    int m = 0;
    for (int j = i; j < n; ++j)
      if (!used[j] && std::abs(ev[j] - ev[i]) <= radius) {
        used[j] = true;
        sum += ev[j];
        ++m;
      }
    clusters.push_back({sum / double(m), m});
  }
  for (std::size_t a = 0; a < clusters.size(); ++a)
    for (std::size_t b = a + 1; b < clusters.size(); ++b)
      if (std::abs(clusters[a].first - clusters[b].first) < 2 * radius)
        throw Error(ErrorKind::Precondition, "jordan_oracle: eigenvalue clusters are not separated");

  const CMat id = CMat::Identity(n, n);
  for (auto [lam, m] : clusters) {
    if (std::abs(lam.imag()) <= radius) lam = lam.real();
    const CMat a = fh.cast<std::complex<double>>() - lam * id;
    // kernel dimensions of a^k, k = 0..m
    std::vector<int> kd = {0};
    CMat ak = id;
    for (int k = 1; k <= m; ++k) {
      ak = a * ak;
      Eigen::JacobiSVD<CMat> svd(ak);
      const auto& sv = svd.singularValues();
      int rank = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8) ++rank;
      kd.push_back(n - rank);
      if (kd.back() == m) break;
    }
    if (kd.back() != m)
      throw Error(ErrorKind::Precondition, "jordan_oracle: generalized eigenspace dimension does not match the multiplicity");
    // blocks of size ≥ k: kd[k] - kd[k-1]
    std::vector<int> ge;
    for (std::size_t k = 1; k < kd.size(); ++k) ge.push_back(kd[k] - kd[k - 1]);
    EigenBlocks eb;
    eb.eigenvalue = lam * s;
    for (std::size_t k = 0; k < ge.size(); ++k) {
      const int next = k + 1 < ge.size() ? ge[k + 1] : 0;
      for (int c = 0; c < ge[k] - next; ++c) eb.blocks.push_back(static_cast<int>(k) + 1);
    }
    std::sort(eb.blocks.rbegin(), eb.blocks.rend());
    js.eigen_structure.push_back(eb);
  }
  return js;
}

CanonicalType implied_type(const JordanStructure& js, double tol) {
  int largest = 0;
  for (const auto& e : js.eigen_structure) {
    if (std::abs(e.eigenvalue.imag()) > tol) return CanonicalType::Second;
    for (int b : e.blocks) largest = std::max(largest, b);
  }
  if (largest >= 3) return CanonicalType::Fourth;
  if (largest == 2) return CanonicalType::Third;
  return CanonicalType::First;
}

}  // namespace genein
