#pragma once

// Exact supercommutative polynomials over non-negatively weighted variables.
//
// A chart is an ordered list of graded variables; a variable of odd weight
// is odd. Odd variables are kept in declaration order inside every monomial,
// and all Koszul signs are computed relative to that order.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gq {

using Rational = mpq_class;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GVar {
  std::string name;
  int weight = 0;

  bool odd() const { return (weight & 1) != 0; }
  bool operator==(const GVar&) const = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Coordinate presentation of an N-manifold. Immutable once built.
///
/// A chart may carry a de Rham pairing: for each weight-0 variable x^a a
/// weight-1 partner xi^a such that d(x^a) = xi^a. Charts of the form
/// T[1]R^m (possibly times extra fibre coordinates) carry one.
class Chart {
 public:
  static ChartPtr make(std::vector<GVar> vars);
  static ChartPtr make(std::vector<GVar> vars,
                       std::vector<std::pair<std::size_t, std::size_t>> de_rham);
  /// T[1]R^m: x1..xm of weight 0 followed by xi1..xim of weight 1,
  /// with extra variables appended after them.
  static ChartPtr tangent_shifted(int m, std::vector<GVar> extra = {});
  static ChartPtr point();

  std::size_t size() const { return vars_.size(); }
  const GVar& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<GVar>& vars() const { return vars_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require(const std::string& name) const;
  int degree() const;

  const std::vector<std::pair<std::size_t, std::size_t>>& de_rham_pairs() const {
    return de_rham_;
  }
  bool has_de_rham() const { return !de_rham_.empty(); }

  bool same_as(const Chart& other) const;

 private:
  explicit Chart(std::vector<GVar> vars) : vars_(std::move(vars)) {}
  std::vector<GVar> vars_;
  std::vector<std::pair<std::size_t, std::size_t>> de_rham_;
};

bool same_universe(const ChartPtr& a, const ChartPtr& b);

/// Exponent vector; odd variables have exponent 0 or 1.
using Exponents = std::vector<std::uint16_t>;

class GPoly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  GPoly() = default;
  explicit GPoly(ChartPtr chart) : chart_(std::move(chart)) {}

  static GPoly constant(ChartPtr chart, const Rational& c);
  static GPoly variable(ChartPtr chart, std::size_t index);
  static GPoly variable(ChartPtr chart, const std::string& name);
  /// Single term; the exponent vector must respect odd exponents <= 1.
  static GPoly monomial(ChartPtr chart, Exponents exps, const Rational& c);

  const ChartPtr& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Weight when all terms agree; the zero polynomial reports 0.
  std::optional<int> weight() const;
  bool is_homogeneous_of(int w) const;
  /// Parity when all terms agree (zero reports even).
  std::optional<int> parity() const;

  /// Coefficient of the term with no variables.
  Rational constant_term() const;
  bool depends_on(std::size_t var) const;

  GPoly operator-() const;
  GPoly& operator+=(const GPoly& q);
  GPoly& operator-=(const GPoly& q);
  GPoly& operator*=(const Rational& c);
  friend GPoly operator+(GPoly p, const GPoly& q) { return p += q; }
  friend GPoly operator-(GPoly p, const GPoly& q) { return p -= q; }
  friend GPoly operator*(GPoly p, const Rational& c) { return p *= c; }
  friend GPoly operator*(const Rational& c, GPoly p) { return p *= c; }
  friend GPoly operator*(const GPoly& p, const GPoly& q);

  bool operator==(const GPoly& q) const;

  /// Split into parts of fixed weight.
  std::map<int, GPoly> by_weight() const;
  /// Split into even and odd parts.
  std::pair<GPoly, GPoly> by_parity() const;

  /// Human-readable, deterministic rendering ("2*x*xi1 - 1/2*x^2").
  std::string to_string() const;

  /// Add c * monomial(exps); for internal use by kernels.
  void add_term(const Exponents& exps, const Rational& c);

 private:
  ChartPtr chart_;
  TermMap terms_;
};

GPoly multiply(const GPoly& p, const GPoly& q);

/// Graded left derivative: d_v(ab) = (d_v a) b + (-1)^{|v||a|} a d_v b.
GPoly left_derivative(const GPoly& p, std::size_t var);

/// Weight of p, or nullopt when p is inhomogeneous.
std::optional<int> weight_of(const GPoly& p);

/// Substitutes lambda^weight(v) * v for every variable and compares with
/// lambda^deg(p) * p. Throws PreconditionError when p is inhomogeneous.
bool scaling_check(const GPoly& p, const Rational& lambda);

/// Algebra morphism sending variable i to images[i]. Images must live on a
/// common chart and have the parity of the variable they replace.
GPoly substitute(const GPoly& p, std::span<const GPoly> images);

/// Multiplies every variable v by factors[v] (an even substitution).
GPoly scale_variables(const GPoly& p, std::span<const Rational> factors);

/// Normalizes a raw term list into canonical form (merging duplicates,
/// applying odd-square vanishing and dropping zero coefficients).
GPoly canonicalize(ChartPtr chart,
                   const std::vector<std::pair<Exponents, Rational>>& raw);

std::string rational_to_string(const Rational& r);

}  // namespace gq
