#include <doctest.h>

#include "oracles.hpp"

using namespace gq;

TEST_SUITE("graded_algebra") {
  TEST_CASE("odd variables anticommute and square to zero") {
    ChartPtr c = Chart::make({{"x", 0}, {"a", 1}, {"b", 1}, {"p", 2}});
    GPoly x = GPoly::variable(c, "x"), a = GPoly::variable(c, "a"), b = GPoly::variable(c, "b"),
          p = GPoly::variable(c, "p");
    CHECK(a * b == -(b * a));
    CHECK((a * a).is_zero());
    CHECK(x * a == a * x);
    CHECK(p * a == a * p);
    CHECK((x * x * p).weight() == 2);
    CHECK((a * b).to_string() == "a*b");
    CHECK((b * a).to_string() == "-a*b");
  }

  TEST_CASE("products agree with the word oracle") {
    ChartPtr c = Chart::make({{"x", 0}, {"u", 1}, {"v", 1}, {"w", 1}, {"p", 2}, {"q", 3}});
    oracle::Random r(5);
    for (int k = 0; k < 500; ++k) {
      GPoly a = r.poly(c, 4, 4), b = r.poly(c, 4, 4);
      REQUIRE(a * b == oracle::multiply(a, b));
      const auto v = static_cast<std::size_t>(r.integer(0, 5));
      REQUIRE(left_derivative(a, v) == oracle::derivative(a, v));
    }
  }

  TEST_CASE("left derivative picks up the Koszul sign") {
    ChartPtr c = Chart::make({{"a", 1}, {"b", 1}});
    GPoly a = GPoly::variable(c, "a"), b = GPoly::variable(c, "b");
    CHECK(left_derivative(a * b, 1) == -a);
    CHECK(left_derivative(a * b, 0) == b);
  }

  TEST_CASE("weights and scaling") {
    ChartPtr c = Chart::make({{"x", 0}, {"e", 1}, {"p", 2}});
    GPoly e = GPoly::variable(c, "e"), p = GPoly::variable(c, "p"), x = GPoly::variable(c, "x");
    GPoly h = x * x * e * p + e * p;
    CHECK(weight_of(h) == 3);
    CHECK(scaling_check(h, Rational(3, 2)));
    CHECK_FALSE(weight_of(h + p).has_value());
    CHECK_THROWS_AS(scaling_check(h + p, 2), PreconditionError);
    CHECK(GPoly(c).weight() == 0);
  }

  TEST_CASE("substitution is an algebra morphism") {
    ChartPtr c = Chart::make({{"x", 0}, {"y", 0}, {"a", 1}, {"b", 1}});
    GPoly x = GPoly::variable(c, "x"), y = GPoly::variable(c, "y"), a = GPoly::variable(c, "a"),
          b = GPoly::variable(c, "b");
    std::vector<GPoly> images = {x + y, x * y, b, a + x * b};
    GPoly f = x * a + y * a * b, g = a * b + x;
    CHECK(substitute(f * g, images) == substitute(f, images) * substitute(g, images));
    std::vector<GPoly> bad = {a, y, b, a};
    CHECK_THROWS(substitute(f, bad));
  }

  TEST_CASE("charts reject negative weights and duplicate names") {
    CHECK_THROWS(Chart::make({{"x", -1}}));
    CHECK_THROWS(Chart::make({{"x", 0}, {"x", 1}}));
    CHECK_THROWS(Chart::make({{"x", 0}, {"y", 0}}, {{0, 1}}));  // d(x) must have weight 1
    ChartPtr t = Chart::tangent_shifted(2);
    CHECK(t->size() == 4);
    CHECK(t->de_rham_pairs().size() == 2);
    CHECK(t->var(2).name == "xi1");
  }

  TEST_CASE("mixing charts is rejected") {
    ChartPtr c1 = Chart::make({{"x", 0}}), c2 = Chart::make({{"y", 0}});
    CHECK_THROWS(GPoly::variable(c1, 0) * GPoly::variable(c2, 0));
  }
}
