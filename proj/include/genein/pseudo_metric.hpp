#pragma once

#include <utility>
#include <vector>

#include "genein/lie_core.hpp"

namespace genein {

class ScalarProduct {
 public:
  ScalarProduct() = default;
  explicit ScalarProduct(Mat g, double tol = 1e-12);

  int dim() const { return static_cast<int>(g_.rows()); }
  const Mat& matrix() const { return g_; }
  const Mat& inverse() const { return ginv_; }
  // (p, q): p positive, q negative directions.
  std::pair<int, int> signature() const { return sig_; }
  bool is_riemannian() const { return sig_.second == 0; }

  double operator()(const Vec& x, const Vec& y) const { return x.dot(g_ * y); }
  Vec flat(const Vec& x) const { return g_ * x; }
  Vec sharp(const Vec& xi) const { return ginv_ * xi; }

  static ScalarProduct diagonal(const std::vector<double>& d);

 private:
  Mat g_, ginv_;
  std::pair<int, int> sig_{0, 0};
};

struct OrthonormalFrame {
  Mat basis;  // columns b_i
  std::vector<int> signs;
};

enum class Musical { Flat, Sharp };
Vec musical(const ScalarProduct& g, const Vec& x, Musical dir);

Mat adjoint_endo(const ScalarProduct& g, const Mat& f);
std::pair<Mat, Mat> sym_antisym_parts(const ScalarProduct& g, const Mat& f);

// Y ↦ ad_Y^*(X).
Mat ad_star(const LieAlgebra& alg, const ScalarProduct& g, const Vec& x);
// Y ↦ H(X, Y, ·)^♯.
Mat h_endo(const ScalarProduct& g, const KForm& h, const Vec& x);
// Z ↦ B(Z, ·)^♯ for a 2-form B.
Mat two_form_endo(const ScalarProduct& g, const KForm& b);

// tr(A ∘ B^*).
double tensor_inner(const ScalarProduct& g, const Mat& a, const Mat& b);
// Full contraction with g^{-1} divided by k!, i.e. e^{ij} has norm ε_i ε_j.
double tensor_inner(const ScalarProduct& g, const KForm& a, const KForm& b);

// Frame sums, Σ ε_i g(A b_i, B b_i) and Σ_{i<j<..} ε.. a'(..) b'(..); used
// as an independent check of the closed forms above.
double tensor_inner_frame(const ScalarProduct& g, const OrthonormalFrame& fr, const Mat& a, const Mat& b);
double tensor_inner_frame(const ScalarProduct& g, const OrthonormalFrame& fr, const KForm& a, const KForm& b);

OrthonormalFrame orthonormal_frame(const ScalarProduct& g, double tol = 1e-10);
// Same procedure on a possibly singular symmetric matrix; throws on degeneracy.
OrthonormalFrame orthonormal_frame(const Mat& g, double tol = 1e-10);

std::pair<int, int> signature_of(const Mat& sym, double tol = 1e-12);

}  // namespace genein
