#include <doctest.h>

#include "oracles.hpp"

using namespace gq;

TEST_SUITE("sigma_structures") {
  TEST_CASE("basic brackets on T*[1]R^2") {
    DarbouxChart y = DarbouxChart::cotangent1(2);
    GPoly x1 = y.var("x1"), p1 = y.var("p1"), p2 = y.var("p2");
    CHECK(poisson_bracket(y, p1, x1) == GPoly::constant(y.chart(), 1));
    CHECK(poisson_bracket(y, x1, p1) == GPoly::constant(y.chart(), -1));
    CHECK(poisson_bracket(y, p1, p2).is_zero());
    CHECK(y.conjugate(0) == 2);
  }

  TEST_CASE("graded antisymmetry of the bracket") {
    DarbouxChart y = DarbouxChart::standard_courant(2);
    oracle::Random r(9);
    for (int k = 0; k < 40; ++k) {
      GPoly f = r.poly(y.chart(), 3, 3), g = r.poly(y.chart(), 3, 3);
      for (const auto& [wf, fp] : f.by_weight())
        for (const auto& [wg, gp] : g.by_weight()) {
          const int s = ((wf - 2) * (wg - 2)) % 2 == 0 ? -1 : 1;
          REQUIRE(poisson_bracket(y, fp, gp) == Rational(s) * poisson_bracket(y, gp, fp));
        }
    }
  }

  TEST_CASE("weights outside [0, n] are rejected") {
    CHECK_THROWS_AS(DarbouxChart(1, {{{"q", -1}, {"p", 2}, 1}}), DomainError);
    CHECK_THROWS_AS(DarbouxChart(2, {{{"q", 0}, {"p", 3}, 1}}), DomainError);
    CHECK_THROWS_AS(DarbouxChart(2, {{{"q", 0}, {"p", 1}, 1}}), DomainError);
    CHECK_NOTHROW(DarbouxChart(3, {{{"q", 1}, {"p", 2}, 1}}));
  }

  TEST_CASE("Poisson bivectors: master equation and derived bracket") {
    DarbouxChart y = DarbouxChart::cotangent1(3);
    ChartPtr c = y.chart();
    oracle::Bivector pi(3, std::vector<GPoly>(3, GPoly(c)));
    pi[0][1] = y.var("x3");
    pi[1][0] = -y.var("x3");
    pi[1][2] = y.var("x1");
    pi[2][1] = -y.var("x1");
    pi[2][0] = y.var("x2");
    pi[0][2] = -y.var("x2");
    GPoly theta = poisson_hamiltonian(y, pi);
    CHECK(master_equation(y, theta).is_zero());
    CHECK(derived_bracket(y, theta, y.var("x1"), y.var("x2")) == y.var("x3"));
    Derivation q = hamiltonian_to_q(y, theta);
    CHECK(is_nq(q));
    CHECK(is_symplectic(y, q));
    CHECK(q_to_hamiltonian(y, q) == theta);
    CHECK(lambda_check(y, q, std::vector<std::string>{"p1", "p2", "p3"}));
  }

  TEST_CASE("a non-symplectic Q has no Hamiltonian") {
    DarbouxChart y = DarbouxChart::cotangent1(1);
    ChartPtr c = y.chart();
    Derivation q(c, 1, {y.var("x1") * y.var("p1"), GPoly(c)});
    CHECK_FALSE(is_symplectic(y, q));
    CHECK_THROWS_AS(q_to_hamiltonian(y, q), StructureError);
  }

  TEST_CASE("Courant: twisted master equation tracks d H") {
    DarbouxChart y = DarbouxChart::standard_courant(4);
    GPoly closed = y.var("theta1") * y.var("theta2") * y.var("theta3");
    GPoly open = y.var("x4") * closed;
    CHECK(master_equation(y, courant_hamiltonian(y, closed)).is_zero());
    CHECK_FALSE(master_equation(y, courant_hamiltonian(y, open)).is_zero());
  }

  TEST_CASE("lambda_check accepts coordinates only") {
    DarbouxChart y = DarbouxChart::cotangent1(2);
    Derivation q = hamiltonian_to_q(y, GPoly(y.chart()));
    CHECK_THROWS_AS(lambda_check(y, q, std::vector<GPoly>{y.var("p1") + y.var("p2")}), UnsupportedInput);
  }

  TEST_CASE("algebroid round trip") {
    StructureConstants so3 = QuadraticLieAlgebra::so3().structure();
    AlgebroidData a = lie_algebra_algebroid(so3);
    Derivation q = algebroid_to_q(a);
    CHECK(is_nq(q));
    CHECK(algebroid_to_q(q_to_algebroid(q)) == q);
    CHECK(q == chevalley_eilenberg_q(so3));
  }
}
