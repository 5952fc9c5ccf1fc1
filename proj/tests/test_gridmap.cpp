#include <doctest.h>

#include "gq/gridmap.hpp"

#include <cmath>
#include <sstream>

using namespace gq;

namespace {

Quat field(double x, double y, double s) {
  return quat_exp(Vec3(s * std::sin(3 * x + y), s * x * y, s * std::cos(2 * y - x)));
}

}  // namespace

TEST_SUITE("gridmap") {
  TEST_CASE("quaternion exponential and logarithm") {
    Vec3 v(0.3, -0.7, 1.1);
    CHECK((quat_log(quat_exp(v)) - v).norm() < 1e-12);
    CHECK(std::abs(quat_exp(v).norm() - 1) < 1e-12);
    Vec3 u(1, 0, 0), w(0, 1, 0);
    CHECK((su2_bracket(u, w) - Vec3(0, 0, 2)).norm() == 0);
    CHECK(su2_cartan(Vec3(0, 0, 1), u, w) == 2);
  }

  TEST_CASE("nodes must be unit quaternions") {
    GridMap g(2, 3);
    CHECK(g.node(1, 2).isApprox(Quat::Identity()));
    CHECK_THROWS_AS(g.set_node(0, 0, Quat(2, 0, 0, 0)), DomainError);
    CHECK_THROWS(GridMap(1, 4));
  }

  TEST_CASE("identity is a two-sided unit") {
    GridMap f = GridMap::sample(9, 9, [](double x, double y) { return field(x, y, 1); });
    GridMap e(9, 9);
    GridMap fe = wzw_product(f, e), ef = wzw_product(e, f);
    for (int i = 0; i + 1 < 9; ++i)
      for (int j = 0; j + 1 < 9; ++j) {
        CHECK(std::abs(fe.omega(i, j)) < 1e-15);
        CHECK(std::abs(ef.omega(i, j)) < 1e-15);
      }
  }

  TEST_CASE("associativity residual shrinks with refinement") {
    auto run = [](int n) {
      GridMap a = GridMap::sample(n, n, [](double x, double y) { return field(x, y, 0.8); });
      GridMap b = GridMap::sample(n, n, [](double x, double y) { return field(y, x, -0.6); });
      GridMap c = GridMap::sample(n, n, [](double x, double y) { return field(x * x, y, 0.5); });
      return wzw_associativity(a, b, c);
    };
    AssociativityResidual coarse = run(17), fine = run(33);
    CHECK(coarse.node < 1e-12);
    CHECK(fine.omega < coarse.omega / 8);
  }

  TEST_CASE("text round trip") {
    GridMap f = GridMap::sample(3, 4, [](double x, double y) { return field(x, y, 0.5); });
    f.set_omega(1, 2, 0.125);
    std::stringstream ss;
    f.write(ss);
    GridMap r = GridMap::read(ss);
    REQUIRE(r.nx() == 3);
    REQUIRE(r.ny() == 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) CHECK(r.node(i, j).coeffs().isApprox(f.node(i, j).coeffs(), 1e-15));
    CHECK(r.omega(1, 2) == 0.125);
    std::istringstream broken("grid 2 2\n0 0 1 0 0 0\n");
    CHECK_THROWS(GridMap::read(broken));
  }

  TEST_CASE("cross term flux defect converges") {
    SU2Field3 f1 = [](double x, double y, double z) { return quat_exp(0.4 * Vec3(std::sin(x + z), y, x * z)); };
    SU2Field3 f2 = [](double x, double y, double z) { return quat_exp(0.4 * Vec3(z, std::cos(x - y), y * y)); };
    const double d8 = cross_term_defect(f1, f2, 8), d16 = cross_term_defect(f1, f2, 16);
    CHECK(d16 < d8 / 3);
  }
}
