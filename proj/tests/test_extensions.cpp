#include <doctest.h>

#include "oracles.hpp"

using namespace gq;

TEST_SUITE("extensions") {
  TEST_CASE("twisted Q is homological iff eta is closed") {
    ChartPtr c = TwistData::chart_for(4, 2);
    GPoly xi = GPoly::variable(c, "xi1") * GPoly::variable(c, "xi2") * GPoly::variable(c, "xi3");
    CHECK(is_nq(twisted_q(TwistData(c, 2, xi))));
    CHECK_FALSE(is_nq(twisted_q(TwistData(c, 2, GPoly::variable(c, "x4") * xi))));
    CHECK_THROWS(TwistData(c, 2, GPoly::variable(c, "xi1")));
  }

  TEST_CASE("gauge change by d alpha") {
    ChartPtr c = TwistData::chart_for(3, 2);
    TwistData t(c, 2, GPoly::variable(c, "xi1") * GPoly::variable(c, "xi2") * GPoly::variable(c, "xi3"));
    GPoly alpha = GPoly::variable(c, "x1") * GPoly::variable(c, "xi2") * GPoly::variable(c, "xi3");
    TwistData t2 = gauge_change(t, alpha);
    CHECK(t2.eta() == t.eta() + de_rham(alpha));
    CHECK(gauge_shift_intertwines(t, alpha));
  }

  TEST_CASE("quadratic Lie algebras") {
    for (const auto& g : {QuadraticLieAlgebra::so3(), QuadraticLieAlgebra::sl2()}) {
      CHECK(oracle::jacobi(g.structure()));
      CHECK_FALSE(jacobi_violation(g.structure()).has_value());
      CHECK(metric_is_invariant(g.structure(), g.metric()));
      CHECK(is_nq(chevalley_eilenberg_q(g.structure())));
      GPoly eta = cartan_3form(g);
      CHECK_FALSE(eta.is_zero());
      CHECK(apply(chevalley_eilenberg_q(g.structure()), eta).is_zero());
    }
    CHECK(cartan_3form(QuadraticLieAlgebra::so3()).to_string() == "xi1*xi2*xi3");
    RMatrix bad = RMatrix::identity(3);
    CHECK_THROWS_AS(QuadraticLieAlgebra(QuadraticLieAlgebra::sl2().structure(), bad), StructureError);
  }

  TEST_CASE("central extension") {
    GradedLieAlgebra e = central_extension(QuadraticLieAlgebra::so3());
    CHECK(e.dim() == 7);
    CHECK_FALSE(e.jacobi_violation().has_value());
    CHECK_FALSE(e.derivation_violation().has_value());
    CHECK(e.differential_squares_to_zero());
    CHECK(e.degree(6) == -2);
  }

  TEST_CASE("loop algebra cocycle and its broken variant") {
    auto g = QuadraticLieAlgebra::sl2();
    CHECK(affine_cocycle_check(g, 4).holds);
    CocycleResult r = affine_cocycle_check(g, 4, [](int m) { return Rational(m * m); });
    CHECK_FALSE(r.holds);
    CHECK_FALSE(r.witness.empty());
  }

  TEST_CASE("symmetry pairs: bracket, skew defect, decoding") {
    ChartPtr c = symmetry_chart(2, 2);
    auto var = [&](const char* n) { return GPoly::variable(c, n); };
    SymmetryPair s1{c, 2, {GPoly::constant(c, 1), GPoly(c)}, var("x2") * var("xi2")};
    SymmetryPair s2{c, 2, {GPoly(c), var("x1")}, var("xi1")};
    SymmetryPair b12 = symmetry_bracket(s1, s2), b21 = symmetry_bracket(s2, s1);
    // [d1, x1 d2] = d2
    CHECK(b12.v[1] == GPoly::constant(c, 1));
    // skew defect d(i_{v1} a2 + i_{v2} a1) = d(1 + x1 x2)
    GPoly defect = b12.alpha + b21.alpha;
    CHECK(defect == de_rham(var("x1") * var("x2")));
    Derivation d = commutator(commutator(symmetry_q(c), iota_encode(s1)), iota_encode(s2));
    CHECK(iota_decode(d, 2) == b12);
    CHECK(find_nonskew_witness(2, 2).has_value());
  }

  TEST_CASE("iota squares to zero exactly when v contracts alpha to zero") {
    ChartPtr c = symmetry_chart(2, 2);
    auto var = [&](const char* n) { return GPoly::variable(c, n); };
    SymmetryPair iso{c, 2, {var("x2"), -var("x1")}, var("x1") * var("xi1") + var("x2") * var("xi2")};
    SymmetryPair non{c, 2, {var("x1"), GPoly(c)}, var("xi1")};
    CHECK(contraction(iso).is_zero());
    CHECK(commutator(iota_encode(iso), iota_encode(iso)).is_zero());
    CHECK_FALSE(contraction(non).is_zero());
    CHECK_FALSE(commutator(iota_encode(non), iota_encode(non)).is_zero());
  }
}
