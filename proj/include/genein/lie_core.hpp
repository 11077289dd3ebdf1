#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include "genein/common.hpp"

namespace genein {

// One structure-constant entry [e_i, e_j] has coefficient `value` on e_k.
// Indices are 1-based, as in the usual e_1..e_n labels.
struct Bracket {
  int i, j, k;
  double value;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  // Abelian algebra of the given dimension.
  explicit LieAlgebra(int dim);
  // Raw dense constants c[(k*n + i)*n + j]; must already be antisymmetric.
  LieAlgebra(int dim, std::vector<double> constants);

  int dim() const { return n_; }
  double c(int k, int i, int j) const { return c_[(k * n_ + i) * n_ + j]; }
  const std::vector<double>& constants() const { return c_; }
  double max_abs() const;

  Vec bracket(const Vec& x, const Vec& y) const;
  Vec bracket_basis(int i, int j) const;
  Mat ad(const Vec& x) const;

  // Constants in the basis given by the columns of p.
  LieAlgebra change_basis(const Mat& p) const;

  // Built from f = ad_X restricted to span(e_1..e_{n-1}), with X = e_n.
  static LieAlgebra almost_abelian(const Mat& f);

 private:
  int n_ = 0;
  std::vector<double> c_;
};

LieAlgebra new_lie_algebra(int dim, const std::vector<Bracket>& brackets);

// Entries of de^k in the e^{ij} basis (i<j, 1-based), converted with
// d xi(X,Y) = -xi([X,Y]).
struct DiffTerm {
  int k, i, j;
  double value;
};
LieAlgebra from_differentials(int dim, const std::vector<DiffTerm>& terms);

double jacobi_residual(const LieAlgebra& g);
Mat ad(const LieAlgebra& g, const Vec& x);

class KForm {
 public:
  KForm() = default;
  KForm(int dim, int degree);

  int dim() const { return n_; }
  int degree() const { return k_; }

  double at(std::initializer_list<int> idx) const;
  double at(const std::vector<int>& idx) const;
  // Sets the component on sorted-distinct indices (0-based) and every
  // permutation with its sign.
  void set(const std::vector<int>& idx, double value);
  void add(const std::vector<int>& idx, double value);

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }
  double max_abs() const;

  // X ⌟ ω, contracting the first slot.
  KForm interior(const Vec& x) const;
  // Components in the basis given by the columns of p.
  KForm pullback(const Mat& p) const;
  // Degree-1 form as a coefficient vector; degree-2 form as a matrix.
  Vec as_vector() const;
  Mat as_matrix() const;
  static KForm from_vector(const Vec& v);
  static KForm from_matrix(const Mat& m);

  KForm& operator+=(const KForm& o);
  KForm& operator*=(double s);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a += b * -1.0; }
  friend KForm operator*(KForm a, double s) { return a *= s; }
  friend KForm operator*(double s, KForm a) { return a *= s; }

  std::size_t flat_index(const std::vector<int>& idx) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<double> data_;
};

// Determinant convention: (a ∧ b)(X, Y) = a(X)b(Y) - a(Y)b(X).
KForm wedge(const KForm& a, const KForm& b);
// e^{i1 ... ik} with 1-based indices.
KForm basis_form(int dim, std::vector<int> idx1);

KForm ce_differential(const LieAlgebra& g, const KForm& w);

// Columns are a basis, orthonormal in the coordinate (Euclidean) sense.
class Subspace {
 public:
  Subspace() = default;
  Subspace(int ambient, Mat basis);
  // Span of the columns, rank decided by singular-value threshold.
  static Subspace span(const Mat& columns, double rel_tol = 1e-9);
  static Subspace kernel(const Mat& a, double rel_tol = 1e-9);
  static Subspace full(int n);
  static Subspace zero(int n);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }
  // Distance from v to the subspace, sup-norm.
  double distance(const Vec& v) const;
  bool contains(const Vec& v, double tol = 1e-9) const { return distance(v) <= tol * (1.0 + v.cwiseAbs().maxCoeff()); }
  // Euclidean orthogonal complement; used for annihilators.
  Subspace complement() const;

 private:
  int ambient_ = 0;
  Mat basis_;
};

int numeric_rank(const Mat& a, double rel_tol = 1e-9);

struct StructureInfo {
  Subspace commutator_ideal;
  Subspace center;
  bool is_solvable = false;
  bool is_nilpotent = false;
  bool is_unimodular = false;
  Vec trace_form;
};

StructureInfo structure_analysis(const LieAlgebra& g, double tol = kDefaultTol);

// Brackets of the subalgebra spanned by the columns of `basis` (assumed
// closed), expressed in that basis.
LieAlgebra restrict_to(const LieAlgebra& g, const Mat& basis);
// Largest deviation of [basis, g] from span(basis).
double ideal_defect(const LieAlgebra& g, const Subspace& s);

}  // namespace genein
