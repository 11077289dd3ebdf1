#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "genein/geinstein.hpp"

namespace genein {

using Params = std::map<std::string, double>;

// ---- parameterized families

struct FamilySpec {
  std::string family_id;
  std::vector<std::string> param_names;
  std::string param_domain;
  std::string source;  // short description of the classification case
};

const std::vector<FamilySpec>& families();
const FamilySpec& family(const std::string& id);

// Unknown parameter names, out-of-domain values and supplying derived
// quantities are errors.
GEProblem instantiate_family(const std::string& id, const Params& params = {});
// Defaults merged with the given overrides.
Params resolved_params(const std::string& id, const Params& params = {});

// One-at-a-time sweeps around one or more base points.
std::vector<Params> default_grid(const std::string& id);

// Flatness of the metric as stated by the classification, when it says.
std::optional<bool> expected_flat(const std::string& id, const Params& params = {});

// Isomorphism class of the underlying algebra where the classification
// records one.
std::string isomorphism_label(const std::string& id, const Params& params = {});

// Rows r with r·[δ(e_i), δ(e^i)] = 0 cutting out the admissible divergences,
// as stated for the family; nullopt where nothing is stated.
std::optional<Mat> divergence_constraints(const std::string& id, const Params& params = {});

// ---- four-dimensional Lie algebras

enum class GEFlag { DoubleCheck, SingleCheck, Cross, Dash };
const char* ge_flag_symbol(GEFlag f);

struct IdealWitness {
  std::string label;  // "ℝ³", "h₃", "e(2)", ...
  Mat basis;          // columns spanning the ideal
};

struct CatalogEntry {
  std::string name;  // label as printed, e.g. "A₄,₈"
  std::string key;   // ASCII handle, e.g. "A48"
  Params params;  // representative parameter values, empty if none
  std::vector<DiffTerm> differentials;
  LieAlgebra algebra;
  bool unimodular = false;
  std::vector<IdealWitness> codim1_ideals;
  std::string commutator_label;
  GEFlag ge_flag = GEFlag::Cross;
  // Restriction on the parameters under which the flag holds, e.g. μ = 1.
  std::string ge_condition;
  std::function<bool(const Params&)> ge_predicate;
};

std::vector<CatalogEntry> table_entries();
// Lookup by name or key; params override the representative values.
CatalogEntry table_entry(const std::string& name_or_key, const Params& params = {});

// Label of a Lie algebra of dimension ≤ 3 ("ℝ²", "h₃", "e(2)", "e(1,1)",
// "so(3)", "so(2,1)", ...), from invariants.
std::string low_dim_label(const LieAlgebra& g, double tol = 1e-9);

// Coordinate subspaces of the given codimension that are ideals with
// non-degenerate restricted metric.
std::vector<Subspace> coordinate_ideals(const GEProblem& p, int codim);

}  // namespace genein
