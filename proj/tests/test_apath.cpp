#include <doctest.h>

#include "oracles.hpp"

#include "gq/apath.hpp"

#include <cmath>
#include <sstream>

using namespace gq;

namespace {

Mat rotation_generator(double a, double b, double c) {
  Mat x(3, 3);
  x << 0, -c, b, c, 0, -a, -b, a, 0;
  return x;
}

APath linear(const Mat& a, const Mat& b, int knots) {
  std::vector<double> t;
  std::vector<Mat> v;
  for (int j = 0; j < knots; ++j) {
    const double s = double(j) / (knots - 1);
    t.push_back(s);
    v.push_back(a + s * b);
  }
  return APath(t, v);
}

}  // namespace

TEST_SUITE("apath_integrator") {
  TEST_CASE("constant paths integrate to the exponential") {
    Mat x = rotation_generator(0.3, -1.1, 0.7);
    GroupoidElement g = integrate(APath::constant(x), 200);
    CHECK((g.holonomy - oracle::expm(x)).norm() < 1e-9);
    CHECK(orthogonality_residual(g.holonomy) < 1e-9);
    CHECK(determinant_residual(g.holonomy) < 1e-9);
    CHECK((integrate(APath::zero(4), 3).holonomy - Mat::Identity(4, 4)).norm() == 0);
  }

  TEST_CASE("fourth order convergence") {
    Mat a = rotation_generator(1, 0, 0.5), b = rotation_generator(0, 2, -1);
    APath p = linear(a, b, 9);
    Mat ref = integrate(p, 4096).holonomy;
    const double e1 = (integrate(p, 8).holonomy - ref).norm();
    const double e2 = (integrate(p, 16).holonomy - ref).norm();
    CHECK(std::log2(e1 / e2) > 3.5);
  }

  TEST_CASE("concatenation multiplies holonomies and reversal inverts") {
    Mat a = rotation_generator(0.2, 0.4, 0.1), b = rotation_generator(-1, 0, 0.3);
    APath p = linear(a, b, 5), q = linear(b, a, 5);
    Mat gp = integrate(p, 400).holonomy, gq_ = integrate(q, 400).holonomy;
    CHECK((integrate(concatenate(p, q), 800).holonomy - gp * gq_).norm() < 1e-8);
    CHECK((integrate(reverse(p), 400).holonomy * gp - Mat::Identity(3, 3)).norm() < 1e-8);
  }

  TEST_CASE("reparametrization invariance") {
    APath p = linear(rotation_generator(1, 1, 0), rotation_generator(0, -1, 2), 11);
    Reparam phi{[](double s) { return s * s; }, [](double s) { return 2 * s; }};
    CHECK(reparametrize_check(p, phi, 1000, 4) < 1e-6);
    Reparam bad{[](double s) { return 0.5 * s; }, [](double) { return 0.5; }};
    CHECK_THROWS_AS(reparametrize_check(p, bad, 100), DomainError);
  }

  TEST_CASE("action algebroid paths") {
    Mat x = rotation_generator(0, 0, 1);
    std::vector<double> t;
    std::vector<Mat> a;
    std::vector<Vec> gamma;
    for (int j = 0; j <= 20; ++j) {
      const double s = j / 20.0;
      t.push_back(s);
      a.push_back(x);
      gamma.push_back(oracle::expm(s * x) * Vec::Unit(3, 0));
    }
    APath p(t, a, gamma);
    CHECK(anchor_residual(p) < 1e-3);
    GroupoidElement g = action_integrate(p, 200);
    CHECK((g.target - gamma.back()).norm() < 1e-6);
    CHECK((g.source - gamma.front()).norm() == 0);

    gamma[10] += Vec::Constant(3, 0.5);
    CHECK_THROWS_AS(action_integrate(APath(t, a, gamma), 200), InconsistentPathError);
  }

  TEST_CASE("concatenation requires matching base points") {
    Mat x = Mat::Zero(2, 2);
    APath p({0, 1}, {x, x}, {Vec::Zero(2), Vec::Zero(2)});
    APath q({0, 1}, {x, x}, {Vec::Ones(2), Vec::Ones(2)});
    CHECK_THROWS_AS(concatenate(p, q), CompositionError);
    CHECK_NOTHROW(concatenate(p, p));
    CHECK_THROWS_AS(concatenate(APath::zero(2), APath::zero(3)), CompositionError);
  }

  TEST_CASE("text round trip") {
    Mat a = rotation_generator(0.25, 0.5, -0.125);
    std::vector<double> t{0, 0.5, 1};
    std::vector<Mat> v{a, 2 * a, -a};
    std::vector<Vec> g{Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)};
    APath p(t, v, g);
    std::stringstream ss;
    p.write(ss);
    APath r = APath::read(ss);
    REQUIRE(r.size() == 3);
    CHECK(r.times() == t);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK((r.values()[j] - v[j]).norm() == 0);
      CHECK((r.base()[j] - g[j]).norm() == 0);
    }
    std::istringstream broken("dim 2\n0 1 2 3\n");
    CHECK_THROWS(APath::read(broken));
  }
}
