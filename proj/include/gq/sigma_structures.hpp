#pragma once

// Degree-n symplectic Darboux charts, their graded Poisson brackets and the
// Hamiltonian description of Q-structures (Poisson at n = 1, Courant at
// n = 2).
//
// Sign conventions (see docs/conventions.md):
//   {p_i, q_i} = c_i for the i-th Darboux pair (c_i = 1 unless specified),
//   {a, b} = -(-1)^{(|a|-n)(|b|-n)} {b, a},
//   Q = {Theta, .},
//   derived bracket [e, f] = {{Theta, e}, f}.

#include "gq/nq_core.hpp"

#include <string>
#include <vector>

namespace gq {

struct DarbouxPair {
  GVar q;
  GVar p;
  Rational coefficient = 1;  // {p, q}
};

class DarbouxChart {
 public:
  /// Throws DomainError unless every weight lies in [0, n] and each pair has
  /// weights (k, n - k).
  DarbouxChart(int n, std::vector<DarbouxPair> pairs,
               std::vector<std::pair<std::string, std::string>> de_rham = {});

  /// T*[1]R^m: pairs (x_a : 0, p_a : 1).
  static DarbouxChart cotangent1(int m);
  /// T*[2]T[1]R^m: pairs (x_a : 0, p_a : 2) and (theta_a : 1, chi_a : 1),
  /// with the de Rham pairing x_a -> theta_a.
  static DarbouxChart standard_courant(int m);

  int n() const { return n_; }
  const ChartPtr& chart() const { return chart_; }
  const std::vector<DarbouxPair>& pairs() const { return pairs_; }
  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t q_index(std::size_t pair) const { return pair; }
  std::size_t p_index(std::size_t pair) const { return pairs_.size() + pair; }
  std::size_t conjugate(std::size_t var) const;
  /// {z_a, z_b} for coordinates a, b.
  Rational basic_bracket(std::size_t a, std::size_t b) const;

  GPoly var(const std::string& name) const { return GPoly::variable(chart_, name); }

 private:
  int n_;
  std::vector<DarbouxPair> pairs_;
  ChartPtr chart_;
};

GPoly poisson_bracket(const DarbouxChart& chart, const GPoly& f, const GPoly& g);

/// Q = {Theta, .}; Theta must have weight n + 1.
Derivation hamiltonian_to_q(const DarbouxChart& chart, const GPoly& theta);

/// True when Q preserves the Darboux pairing on coordinates, i.e.
/// Q{a,b} = {Qa,b} + (-1)^{|a|-n}{a,Qb} for all coordinates a, b.
bool is_symplectic(const DarbouxChart& chart, const Derivation& q);

/// The unique weight-(n+1) Theta with {Theta, .} = Q. Throws StructureError
/// when Q is not symplectic and PreconditionError when n < 1 or deg Q != 1.
GPoly q_to_hamiltonian(const DarbouxChart& chart, const Derivation& q);

/// {Theta, Theta}.
GPoly master_equation(const DarbouxChart& chart, const GPoly& theta);

/// {{Theta, e1}, e2}.
GPoly derived_bracket(const DarbouxChart& chart, const GPoly& theta, const GPoly& e1,
                      const GPoly& e2);

/// Coordinate-aligned Lagrangian NQ-submanifold test: the constraints set
/// the named coordinates to zero.
bool lambda_check(const DarbouxChart& chart, const Derivation& q,
                  const std::vector<std::string>& constraints);
/// Same, with constraints given as polynomials; anything other than a single
/// coordinate raises UnsupportedInput.
bool lambda_check(const DarbouxChart& chart, const Derivation& q,
                  const std::vector<GPoly>& constraints);

/// Hamiltonian of a bivector on T*[1]R^m: Theta = 1/2 pi^{ab} p_b p_a.
/// pi is m x m, antisymmetric, with weight-0 entries.
GPoly poisson_hamiltonian(const DarbouxChart& chart,
                          const std::vector<std::vector<GPoly>>& pi);

/// Theta = theta^a p_a + H on a standard Courant chart, where H is a
/// weight-3 polynomial in x and theta (a 3-form).
GPoly courant_hamiltonian(const DarbouxChart& chart, const GPoly& twist = GPoly());

/// Lie algebroid A -> R^m with anchor and structure functions, stored on the
/// A[1] chart (base coordinates of weight 0, fibre coordinates of weight 1).
struct AlgebroidData {
  ChartPtr chart;
  std::vector<std::size_t> base;   // chart indices of x^a
  std::vector<std::size_t> fiber;  // chart indices of xi^i
  // anchor[a][i] = rho^a_i(x)
  std::vector<std::vector<GPoly>> anchor;
  // structure[k][i][j] = c^k_ij(x)
  std::vector<std::vector<std::vector<GPoly>>> structure;

  /// Checks index ranges, weights and antisymmetry of c in (i, j).
  void validate() const;
};

/// Chart with base coordinates x1..xm and fibre coordinates xi1..xir.
ChartPtr algebroid_chart(int base_dim, int rank);

/// A Lie algebra with the given structure constants (zero anchor, base a point).
AlgebroidData lie_algebra_algebroid(const std::vector<std::vector<std::vector<Rational>>>& c);

/// Q(x^a) = xi^i rho^a_i, Q(xi^k) = -1/2 c^k_ij xi^i xi^j.
Derivation algebroid_to_q(const AlgebroidData& a);

/// Reads anchor and structure functions off a degree-1 Q on a chart with
/// weights in {0, 1}. Throws PreconditionError otherwise.
AlgebroidData q_to_algebroid(const Derivation& q);

}  // namespace gq
