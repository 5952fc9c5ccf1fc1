#pragma once

// Graded vector fields on a chart, stored by their action on coordinates.

#include "gq/graded_algebra.hpp"

#include <string>
#include <vector>

namespace gq {

class Derivation {
 public:
  Derivation() = default;
  /// Zero derivation of the given degree.
  Derivation(ChartPtr chart, int degree);
  /// Components are the images of the coordinates, in chart order. Each must
  /// be homogeneous of weight weight(v) + degree.
  Derivation(ChartPtr chart, int degree, std::vector<GPoly> components);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  int parity() const { return degree_ & 1; }
  const GPoly& component(std::size_t var) const { return components_.at(var); }
  const std::vector<GPoly>& components() const { return components_; }
  void set_component(std::size_t var, GPoly p);

  bool is_zero() const;
  bool operator==(const Derivation& other) const;

  Derivation operator-() const;
  Derivation& operator+=(const Derivation& other);
  Derivation& operator-=(const Derivation& other);
  Derivation& operator*=(const Rational& c);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Rational& c, Derivation a) { return a *= c; }

  /// "x -> xi; xi -> 0" style listing of the nonzero components.
  std::string to_string() const;

 private:
  void check_component(std::size_t var, const GPoly& p) const;

  ChartPtr chart_;
  int degree_ = 0;
  std::vector<GPoly> components_;
};

/// D(p) = sum_v D(v) * left_derivative(p, v).
GPoly apply(const Derivation& d, const GPoly& p);

/// Graded commutator D1 D2 - (-1)^{|D1||D2|} D2 D1.
Derivation commutator(const Derivation& d1, const Derivation& d2);

/// Returns 1/2 [Q, Q] = Q^2. Throws PreconditionError unless degree(Q) == 1.
Derivation q_square(const Derivation& q);
bool is_nq(const Derivation& q);

/// Highest coordinate weight (0 for the point chart).
int manifold_degree(const Chart& chart);

/// Degree-0 derivation with E(v) = weight(v) * v.
Derivation euler_field(const ChartPtr& chart);

/// Sum_a xi^a d/dx^a for a chart with a de Rham pairing.
Derivation de_rham_q(const ChartPtr& chart);

/// Symbolic de Rham operator d on a chart with a de Rham pairing.
GPoly de_rham(const GPoly& p);

}  // namespace gq
