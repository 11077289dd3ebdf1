#include <doctest.h>

#include <functional>
#include <random>

#include "genein/catalog.hpp"
#include "genein/lie_core.hpp"
#include "oracle.hpp"

using namespace genein;

namespace {

LieAlgebra heisenberg() { return new_lie_algebra(3, {{1, 2, 3, 1.0}}); }
LieAlgebra so3() { return new_lie_algebra(3, {{1, 2, 3, 1.0}, {2, 3, 1, 1.0}, {3, 1, 2, 1.0}}); }
LieAlgebra aff_r() { return new_lie_algebra(2, {{1, 2, 2, 1.0}}); }

KForm random_form(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> nd;
  KForm w(n, k);
  std::vector<int> idx(k);
  // every sorted index tuple
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      w.set(idx, nd(rng));
      return;
    }
    for (int i = from; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return w;
}

}  // namespace

TEST_CASE("brackets are stored antisymmetrically with 1-based input") {
  LieAlgebra h = heisenberg();
  CHECK(h.dim() == 3);
  CHECK(h.c(2, 0, 1) == 1.0);
  CHECK(h.c(2, 1, 0) == -1.0);
  CHECK(h.bracket(Vec::Unit(3, 1), Vec::Unit(3, 0)).isApprox(-Vec::Unit(3, 2)));
  // writing [e2, e1] = -e3 is the same algebra
  LieAlgebra h2 = new_lie_algebra(3, {{2, 1, 3, -1.0}});
  CHECK(h2.constants() == h.constants());
}

TEST_CASE("bad bracket input is rejected with a kind") {
  CHECK_THROWS_AS(new_lie_algebra(3, {{1, 1, 2, 1.0}}), Error);
  try {
    new_lie_algebra(3, {{1, 2, 3, 1.0}, {2, 1, 3, 1.0}});
    FAIL("expected a conflict");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Antisymmetry);
    CHECK(e.residual() == doctest::Approx(2.0));
  }
  CHECK_THROWS_AS(new_lie_algebra(3, {{1, 4, 3, 1.0}}), Error);
  std::vector<double> c(8, 0.0);
  c[(0 * 2 + 0) * 2 + 1] = 1.0;  // [e1,e2] = e1 without the antisymmetric partner
  CHECK_THROWS_AS(LieAlgebra(2, c), Error);
}

TEST_CASE("differentials convert with d xi(X,Y) = -xi([X,Y])") {
  // de^3 = -e^12 means [e1, e2] = e3
  LieAlgebra h = from_differentials(3, {{3, 1, 2, -1.0}});
  CHECK(h.constants() == heisenberg().constants());
  KForm e3 = basis_form(3, {3});
  KForm d = ce_differential(h, e3);
  CHECK(d.at({0, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("Jacobi residual separates Lie algebras from non-Lie brackets") {
  CHECK(jacobi_residual(so3()) < 1e-14);
  CHECK(jacobi_residual(heisenberg()) == 0.0);
  for (const auto& e : table_entries()) CHECK(jacobi_residual(e.algebra) < 1e-12);
  // [e1,e2] = e3, [e1,e3] = e1, [e2,e3] = e2 breaks Jacobi
  LieAlgebra bad = new_lie_algebra(3, {{1, 2, 3, 1.0}, {1, 3, 1, 1.0}, {2, 3, 2, 1.0}});
  CHECK(jacobi_residual(bad) > 0.5);
  CHECK(jacobi_residual(bad) == doctest::Approx(oracle::jacobi_sup(bad)));
}

TEST_CASE("forms: wedge, interior and the determinant convention") {
  KForm e1 = basis_form(3, {1}), e2 = basis_form(3, {2}), e3 = basis_form(3, {3});
  KForm w = wedge(e1, e2);
  CHECK(w.at({0, 1}) == 1.0);
  CHECK(w.at({1, 0}) == -1.0);
  KForm v = wedge(w, e3);
  CHECK(v.at({0, 1, 2}) == 1.0);
  CHECK(v.at({2, 1, 0}) == -1.0);
  KForm i1 = v.interior(Vec::Unit(3, 0));
  CHECK(i1.at({1, 2}) == 1.0);
  KForm i2 = v.interior(Vec::Unit(3, 1));
  CHECK(i2.at({0, 2}) == -1.0);
  CHECK(KForm::from_matrix(w.as_matrix()).data() == w.data());
}

TEST_CASE("Chevalley-Eilenberg differential squares to zero") {
  std::mt19937_64 rng(11);
  for (const auto& e : table_entries()) {
    for (int k = 1; k <= 2; ++k) {
      KForm w = random_form(rng, 4, k);
      CHECK(ce_differential(e.algebra, ce_differential(e.algebra, w)).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("change of basis commutes with the differential") {
  std::mt19937_64 rng(12);
  LieAlgebra g = table_entry("A48").algebra;
  Mat p = oracle::random_basis(rng, 4);
  LieAlgebra gp = g.change_basis(p);
  CHECK(jacobi_residual(gp) < 1e-10);
  KForm w = random_form(rng, 4, 2);
  KForm lhs = ce_differential(gp, w.pullback(p));
  KForm rhs = ce_differential(g, w).pullback(p);
  CHECK((lhs - rhs).max_abs() < 1e-10);
  // brackets transform as vectors
  Vec x = oracle::random_matrix(rng, 4, 1), y = oracle::random_matrix(rng, 4, 1);
  CHECK((p * gp.bracket(x, y) - g.bracket(p * x, p * y)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("almost Abelian constructor puts X last") {
  Mat f(2, 2);
  f << 1, 2, 3, 4;
  LieAlgebra g = LieAlgebra::almost_abelian(f);
  CHECK(g.dim() == 3);
  CHECK(g.ad(Vec::Unit(3, 2)).topLeftCorner(2, 2).isApprox(f));
  CHECK(g.bracket(Vec::Unit(3, 0), Vec::Unit(3, 1)).norm() == 0.0);
}

TEST_CASE("subspaces: span, kernel and complement") {
  Mat cols(3, 3);
  cols << 1, 2, 0, 0, 0, 1, 0, 0, 1;
  Subspace s = Subspace::span(cols);
  CHECK(s.dim() == 2);
  CHECK(s.contains(Vec::Unit(3, 0)));
  CHECK_FALSE(s.contains(Vec::Unit(3, 2)));
  Subspace c = s.complement();
  CHECK(c.dim() == 1);
  // span is e1, e2 + e3, so the complement is (e2 - e3)/√2
  CHECK(sup_norm(s.basis().transpose() * c.basis()) < 1e-14);
  CHECK(c.basis()(1, 0) == doctest::Approx(-c.basis()(2, 0)));
  Mat a(1, 3);
  a << 1, 1, 1;
  CHECK(Subspace::kernel(a).dim() == 2);
  CHECK(numeric_rank(cols) == 2);
}

TEST_CASE("structure analysis on small algebras") {
  StructureInfo h = structure_analysis(heisenberg());
  CHECK(h.commutator_ideal.dim() == 1);
  CHECK(h.center.dim() == 1);
  CHECK(h.is_nilpotent);
  CHECK(h.is_solvable);
  CHECK(h.is_unimodular);

  StructureInfo a = structure_analysis(aff_r());
  CHECK(a.is_solvable);
  CHECK_FALSE(a.is_nilpotent);
  CHECK_FALSE(a.is_unimodular);
  CHECK(a.center.dim() == 0);

  StructureInfo s = structure_analysis(so3());
  CHECK_FALSE(s.is_solvable);
  CHECK(s.commutator_ideal.dim() == 3);
  CHECK(s.is_unimodular);
}

TEST_CASE("ideals and restriction") {
  LieAlgebra g = table_entry("A48").algebra;
  Mat b = Mat::Identity(4, 3);
  CHECK(ideal_defect(g, Subspace::span(b)) < 1e-14);
  Mat not_ideal(4, 1);
  not_ideal << 0, 1, 0, 0;
  CHECK(ideal_defect(g, Subspace::span(not_ideal)) > 0.5);
  LieAlgebra r = restrict_to(g, b);
  CHECK(r.dim() == 3);
  CHECK(low_dim_label(r) == "h₃");
}
