#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace genein {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

// Every invariant violation carries a kind and, when it applies, the
// residual that tripped it.
enum class ErrorKind {
  Input,
  Dimension,
  Antisymmetry,
  Jacobi,
  NotClosed,
  DegenerateMetric,
  Precondition,
  Domain,
  UnknownName,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), kind_(kind), residual_(residual) {}
  ErrorKind kind() const { return kind_; }
  double residual() const { return residual_; }

 private:
  ErrorKind kind_;
  double residual_;
};

const char* error_kind_name(ErrorKind k);

inline double sup_norm(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace genein
