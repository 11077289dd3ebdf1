#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "genein/catalog.hpp"
#include "genein/normal_forms.hpp"

namespace genein {

// ---- residual scans

using Grid = std::map<std::string, std::vector<double>>;

struct ScanPoint {
  Params params;
  double residual = 0;
  bool ok = true;     // false if the point could not be built
  std::string error;  // set when !ok
};

// Cartesian product, lexicographic over the parameter names with the last
// name varying fastest.
std::vector<Params> cartesian(const Grid& grid);

// Optional hook applied to each built problem before evaluation.
using Tamper = std::function<void(GEProblem&)>;

std::vector<ScanPoint> residual_scan(const std::string& family_id, const Grid& grid, const Tamper& tamper = nullptr);
// Same result, one point after the other; kept as the reference.
std::vector<ScanPoint> residual_scan_serial(const std::string& family_id, const Grid& grid,
                                            const Tamper& tamper = nullptr);

// ---- random falsification

struct FalsifyOptions {
  // Evaluated in addition to the random trials.
  std::optional<GEProblem> inject;
  // When > 0, metrics whose restriction to g' has smallest |eigenvalue|
  // below gap·|G| are redrawn.
  double commutator_gap = 0;
  // log10 range for the size of H; H = 0 is never drawn.
  double h_log10_min = -3, h_log10_max = 1;
};

struct FalsifyResult {
  double min_residual = 0;
  GEProblem argmin;
  long argmin_trial = -1;  // -1 for the injected problem
  long trials = 0;
};

// Independent per-trial stream.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);
// One random problem on the fixed algebra: metric of signature (p, q), H
// closed, δ = 0.
GEProblem random_problem(const LieAlgebra& g, std::pair<int, int> signature, std::uint64_t stream_seed,
                         const FalsifyOptions& opt = {});
// Same, for a pre-computed basis of closed 3-forms and of g' (saves work
// across trials).
struct FalsifySetup {
  LieAlgebra algebra;
  std::pair<int, int> signature;
  Mat closed_basis;  // columns: closed 3-forms as flat coefficient vectors
  Mat commutator;    // columns: basis of g'
};
FalsifySetup falsify_setup(const LieAlgebra& g, std::pair<int, int> signature);
GEProblem random_problem(const FalsifySetup& s, std::uint64_t stream_seed, const FalsifyOptions& opt = {});

FalsifyResult random_falsification(const LieAlgebra& g, std::pair<int, int> signature, long trials, std::uint64_t seed,
                                   const FalsifyOptions& opt = {});
FalsifyResult random_falsification_serial(const LieAlgebra& g, std::pair<int, int> signature, long trials,
                                          std::uint64_t seed, const FalsifyOptions& opt = {});

// Standard normal draws by Box–Muller on top of mt19937_64, so the stream
// does not depend on the standard library's distribution code.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed);
  double uniform();  // [0, 1)
  double normal();

 private:
  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0;
};

// ---- Jordan structure

struct EigenBlocks {
  std::complex<double> eigenvalue;
  std::vector<int> blocks;  // sizes, descending
};
struct JordanStructure {
  std::vector<EigenBlocks> eigen_structure;
};

JordanStructure jordan_oracle(const Mat& f, double tol = 1e-6);
// Canonical type suggested by the Jordan structure of a symmetric map.
CanonicalType implied_type(const JordanStructure& js, double tol = 1e-6);

}  // namespace genein
