#pragma once

#include <string>
#include <vector>

#include "genein/pseudo_metric.hpp"

namespace genein {

enum class BlockName { L1, L2, L3, M3, M4 };
enum class CanonicalType { First, Second, Third, Fourth };

const char* type_name(CanonicalType t);

Mat block(BlockName name, const std::vector<double>& params);
Mat block_diag(const std::vector<Mat>& blocks);

CanonicalType classify_symmetric(const ScalarProduct& metric, const Mat& f, double tol = 1e-6);

// Canonical parameters per type, leading block first:
//   First:  a_1..a_n                 diag(a)
//   Second: α, β, b_1..b_{n-2}       diag(L1(α,β), b)
//   Third:  γ, ε, c_1..c_{n-2}       diag(L2(γ,ε), c)
//   Fourth: τ, d_1..d_{n-3}          diag(L3(τ), d)
Mat canonical_matrix(CanonicalType t, const std::vector<double>& params);
// tr(f²) of the canonical matrix, from the closed forms.
double trfs2_gap(CanonicalType t, const std::vector<double>& params);

double verify_normal_form(const ScalarProduct& metric, const Mat& f, const Mat& claimed, const OrthonormalFrame& frame,
                          double tol = 1e-9);

// diag(-1, 1, ..., 1).
ScalarProduct lorentz(int n);

}  // namespace genein
