#pragma once

#include <array>
#include <vector>

#include "genein/pseudo_metric.hpp"

namespace genein {

struct GeneralisedVector {
  Vec vec;    // part in g
  Vec covec;  // part in g*
  Vec stacked() const;
  static GeneralisedVector from_stacked(const Vec& v);
};

struct Divergence {
  Vec on_vectors;    // δ(e_i)
  Vec on_covectors;  // δ(e^i)
  static Divergence zero(int n);
  Vec stacked() const;
  static Divergence from_stacked(const Vec& v);
  double operator()(const GeneralisedVector& a) const { return on_vectors.dot(a.vec) + on_covectors.dot(a.covec); }
  double max_abs() const;
};

struct GEProblem {
  LieAlgebra algebra;
  ScalarProduct metric;
  KForm h;
  Divergence delta;
  double tolerance = kDefaultTol;

  int dim() const { return algebra.dim(); }
  // 1 + largest magnitude among the structure constants, H and δ.
  double scale() const;
};

// Checks Jacobi, closedness of H and shapes; throws Error naming the first
// violated invariant with its residual.
void validate(const GEProblem& p);
GEProblem make_problem(LieAlgebra alg, ScalarProduct metric, KForm h, Divergence delta, double tol = kDefaultTol);
GEProblem make_problem(LieAlgebra alg, ScalarProduct metric, KForm h);

struct EinsteinReport {
  double eq1 = 0, eq2 = 0, eq3 = 0, eq4 = 0, total = 0;
  bool is_einstein = false;
};

// ---- the generalised tangent double E = g ⊕ g*

// Matrix of b ↦ [a, b]_H on stacked coordinates (2n).
Mat dorfman_ad(const GEProblem& p, const GeneralisedVector& a);
GeneralisedVector dorfman_bracket(const GEProblem& p, const GeneralisedVector& a, const GeneralisedVector& b);
// Generalised metric G_g(X + ξ) = ξ^♯ + X^♭, and the pairing matrix with
// ⟨X+ξ, Y+η⟩ = ½(η(X) + ξ(Y)).
Mat generalised_metric(const ScalarProduct& g);
Mat pairing_matrix(int n);
Mat projector(const ScalarProduct& g, int sign);

// ---- Γ and β

Mat gamma_pm(const GEProblem& p, const Vec& x, int sign);
double beta_trace(const GEProblem& p, const Vec& x, const Vec& y);
struct BetaParts {
  double sym = 0, antisym = 0;
};
BetaParts beta_explicit(const GEProblem& p, const Vec& x, const Vec& y);

// ---- residual systems

EinsteinReport einstein_residuals(const GEProblem& p);
bool is_generalised_einstein(const GEProblem& p, double tol);
inline bool is_generalised_einstein(const GEProblem& p) { return is_generalised_einstein(p, p.tolerance); }

struct TraceResiduals {
  double eq_a = 0, eq_b = 0;
  double total() const { return eq_a > eq_b ? eq_a : eq_b; }
};
TraceResiduals trace_route_residuals(const GEProblem& p);

// Coordinates [δ(e_1..e_n), δ(e^1..e^n)].
Subspace admissible_divergences(const LieAlgebra& g, const ScalarProduct& metric, const KForm& h, double tol = kDefaultTol);

// Basis the ideal-adapted equations are written in: the ideal basis, then an
// orthonormal frame X_1.. of its g-orthogonal complement. signs[i] = g(X_i, X_i).
Mat adapted_basis(const GEProblem& p, const Subspace& ideal, int codim, std::vector<int>* signs = nullptr);

// Residual slots follow the order of the equations: codim 1 is
// (X,X), (X,Y), (Y,Y), X∧Y, Y∧Z; codim 2 is (X1,X1), (X2,X2), (X1,X2),
// (X1,Y), (X2,Y), (Y,Y), X1∧Y, X2∧Y, Y∧Z with Y, Z in the ideal.
std::array<double, 5> codim1_residuals(const GEProblem& p, const Subspace& ideal);
std::array<double, 9> codim2_residuals(const GEProblem& p, const Subspace& ideal);

struct ReductionReport {
  bool h_abelian = false;
  bool h_acts_skew = false;
  bool h_hooks_H_zero = false;
  bool delta_constraint = false;
  Subspace commutator;  // g'
  Subspace h;           // (g')^⊥
  Mat restricted_basis;  // orthonormal basis of g' used for the restricted problem
  GEProblem restricted_problem;
  bool all_conditions() const { return h_abelian && h_acts_skew && h_hooks_H_zero && delta_constraint; }
};
ReductionReport riemannian_reduction_check(const GEProblem& p, double tol = 1e-8);

}  // namespace genein
