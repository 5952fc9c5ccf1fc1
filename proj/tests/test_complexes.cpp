#include <doctest.h>

#include "oracles.hpp"

#include "gq/lattice.hpp"
#include "gq/symplectic_complexes.hpp"

#include <sstream>

using namespace gq;

namespace {

GradedComplex circle() {
  RMatrix d(3, 3);
  for (std::size_t e = 0; e < 3; ++e) {
    d(e, e) = -1;
    d(e, (e + 1) % 3) = 1;
  }
  return GradedComplex({{0, 3}, {1, 3}}, {{0, d}});
}

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& h) {
  std::map<int, std::size_t> out;
  for (const auto& [k, v] : h)
    if (v) out[k] = v;
  return out;
}

}  // namespace

TEST_SUITE("symplectic_complexes") {
  TEST_CASE("complexes validate shapes and d^2") {
    CHECK_THROWS_AS(GradedComplex({{0, 2}, {1, 1}}, {{0, RMatrix(2, 2)}}), StructureError);
    RMatrix d0 = RMatrix::from_rows({{1}}), d1 = RMatrix::from_rows({{1}});
    CHECK_THROWS_AS(GradedComplex({{0, 1}, {1, 1}, {2, 1}}, {{0, d0}, {1, d1}}), StructureError);
    GradedComplex c = circle();
    CHECK(c.euler_characteristic() == 0);
    CHECK(nonzero(cohomology(c).dims) == std::map<int, std::size_t>{{0, 1}, {1, 1}});
  }

  TEST_CASE("double complexes are compatible and nondegenerate") {
    SymplecticComplex s = double_complex(circle(), 1);
    CHECK_FALSE(s.compatibility_violation().has_value());
    CHECK(s.nondegenerate());
    CohomologyPairing p = cohomology_pairing(s);
    CHECK(p.nondegenerate);
    CHECK(p.graded_symmetric);
    CHECK(nonzero(p.h.dims) == std::map<int, std::size_t>{{0, 2}, {1, 2}});
  }

  TEST_CASE("incompatible pairings are reported") {
    GradedComplex c({{0, 1}, {1, 1}}, {{0, RMatrix::from_rows({{1}})}});
    SymplecticComplex s(c, 1, {{0, RMatrix::from_rows({{1}})}, {1, RMatrix::from_rows({{1}})}});
    CHECK(s.compatibility_violation() == 0);
    CHECK_THROWS_AS(cohomology_pairing(s), StructureError);
  }

  TEST_CASE("tensor products obey Kuenneth") {
    GradedComplex t = tensor(circle(), circle());
    CHECK(nonzero(cohomology(t).dims) == std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 1}});
  }

  TEST_CASE("suspension shifts cohomology") {
    for (int n = 1; n <= 3; ++n) {
      SuspensionResult s = suspension_check(circle(), n);
      CHECK(s.shifted);
      CHECK(s.relative.at(n) == 1);
    }
    CHECK(nonzero(cohomology(relative_cube(2, 3)).dims) == std::map<int, std::size_t>{{2, 1}});
  }

  TEST_CASE("Lemma 3 in strict mode") {
    CHECK(lemma3_orthogonality(RelativeComplex::closed(double_complex(circle(), 1))).holds);
    Lemma3Result r = lemma3_orthogonality(interval_model(4, point_complex(), 0));
    CHECK(r.mode == Lemma3Mode::Strict);
    CHECK(r.holds);
    CHECK(r.quotient_nondegenerate);
  }

  TEST_CASE("Lemma 3 fails on the two-ended interval") {
    RelativeComplex r = interval_model(4, point_complex(), 0, true);
    Lemma3Result l = lemma3_orthogonality(r);
    CHECK(l.mode == Lemma3Mode::Strict);
    CHECK_FALSE(l.holds);
  }

  TEST_CASE("Lemma 3 fails on an interval with a circle fibre") {
    Lemma3Result l = lemma3_orthogonality(interval_model(3, circle(), 1));
    CHECK_FALSE(l.holds);
    CHECK_FALSE(l.report.empty());
  }

  TEST_CASE("surface models") {
    auto g = QuadraticLieAlgebra::so3();
    RelativeComplex torus = lattice_model(Surface::Torus, 3, 3, g);
    CHECK(nonzero(cohomology(torus.total().complex()).dims) ==
          std::map<int, std::size_t>{{0, 3}, {1, 6}, {2, 3}});
    Lemma3Result l = lemma3_orthogonality(torus);
    CHECK(l.mode == Lemma3Mode::Degraded);
    CHECK(l.cohomology_nondegenerate);

    RelativeComplex cyl = lattice_model(Surface::Cylinder, 3, 3, g);
    LagrangianResult b = boundary_lagrangian(cyl);
    CHECK(b.lagrangian());
    CHECK(relative_pairing(cyl).nondegenerate);
    CHECK(relative_pairing(lattice_model(Surface::Disk, 3, 3, g)).nondegenerate);
  }

  TEST_CASE("relative duality on interval models") {
    auto g = QuadraticLieAlgebra::so3();
    CHECK(relative_pairing(interval_cup_model(4, g)).nondegenerate);
    CHECK_FALSE(relative_pairing(interval_model(4, point_complex(), 0)).nondegenerate);
  }

  TEST_CASE("grid triangulations") {
    Simplicial2 k = Simplicial2::grid(3, 4, true, true);
    CHECK(k.vertices == 12);
    CHECK(k.edges.size() == 36);
    CHECK(k.triangles.size() == 24);
    CHECK_THROWS(Simplicial2::grid(2, 4, true, false));
  }

  TEST_CASE("interchange round trip") {
    SymplecticComplex s = double_complex(circle(), 1);
    std::stringstream ss;
    write_complex(ss, s);
    bool has_pairing = false;
    SymplecticComplex r = read_complex(ss, &has_pairing);
    CHECK(has_pairing);
    CHECK(r.degree() == 1);
    for (int k : s.complex().degrees()) {
      CHECK(r.complex().d(k) == s.complex().d(k));
      CHECK(r.pairing(k) == s.pairing(k));
    }
    std::stringstream plain;
    write_complex(plain, circle());
    read_complex(plain, &has_pairing);
    CHECK_FALSE(has_pairing);
    std::istringstream broken("complex\ndim 0 2\nend\n");
    CHECK_NOTHROW(read_complex(broken));
    std::istringstream bad("complex\ndim 0 1\ndim 1 1\nd 0\n1\nd 1\n");
    CHECK_THROWS(read_complex(bad));
  }

  TEST_CASE("nmap spaces") {
    for (int m = 1; m <= 3; ++m) {
      NMapSpace s = nmap_space(DarbouxChart::cotangent1(m), 1);
      CHECK(s.total_dim() == std::size_t(2 * m));
      CHECK(s.nondegenerate());
    }
    NMapSpace c = nmap_space(DarbouxChart::standard_courant(2), 2);
    CHECK(c.components.size() == 8);
    CHECK(c.total_dim() == 12);
    CHECK(c.nondegenerate());
    CHECK_THROWS_AS(nmap_space(DarbouxChart::cotangent1(2), 2), DomainError);
  }
}
