#pragma once

#include <vector>

#include "genein/geinstein.hpp"

namespace genein {

// nabla[i] is the matrix of ∇_{e_i}: column j holds ∇_{e_i} e_j.
struct Connection {
  std::vector<Mat> nabla;
  Mat along(const Vec& x) const;
  int dim() const { return static_cast<int>(nabla.size()); }
};

Connection levi_civita(const LieAlgebra& g, const ScalarProduct& metric);
// ∇±_X Y = ∇^g_X Y ± ½ H(X, Y, ·)^♯.
Connection bismut(const GEProblem& p, int sign);

// riemann[i][j] = R(e_i, e_j) as an endomorphism.
struct CurvatureReport {
  std::vector<std::vector<Mat>> riemann;
  Mat ricci;
  double scalar = 0;
  bool is_flat = false;
  double max_abs = 0;
};

std::vector<std::vector<Mat>> curvature_tensor(const LieAlgebra& g, const Connection& c);
// Ric(X, Y) = tr(Z ↦ R(Z, X) Y).
Mat ricci_of(const std::vector<std::vector<Mat>>& r);

CurvatureReport curvature_report(const LieAlgebra& g, const ScalarProduct& metric, double tol = 1e-8);
bool almost_abelian_flat_test(const ScalarProduct& metric_n, const Mat& f, double tol = 1e-8);
Mat bismut_ricci(const GEProblem& p, int sign);

// Sup-norms of the torsion and of the metricity defect.
double torsion_defect(const LieAlgebra& g, const Connection& c);
double metric_defect(const ScalarProduct& metric, const Connection& c);

Vec trace_form(const LieAlgebra& g);
double soliton_residual(const LieAlgebra& g, const ScalarProduct& metric);

}  // namespace genein
