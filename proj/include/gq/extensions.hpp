#pragma once

// Principal R[n]-bundles over T[1]R^m in a trivialization, quadratic Lie
// algebras with their Cartan 3-form and central extension, the loop-algebra
// cocycle, and symmetry pairs (v, alpha) with their Leibniz bracket.

#include "gq/nq_core.hpp"
#include "gq/rational_matrix.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gq {

// ---------------------------------------------------------------------------
// Twists

/// X = T[1]R^m x R[n] with fibre coordinate t of weight n and vertical part
/// of Q given by an (n+1)-form eta.
class TwistData {
 public:
  /// Chart x1..xm, xi1..xim, t.
  static ChartPtr chart_for(int m, int n);

  TwistData(ChartPtr chart, int n, GPoly eta);

  const ChartPtr& chart() const { return chart_; }
  int n() const { return n_; }
  int base_dim() const { return static_cast<int>(chart_->de_rham_pairs().size()); }
  std::size_t fiber_index() const { return chart_->size() - 1; }
  const GPoly& eta() const { return eta_; }

 private:
  ChartPtr chart_;
  int n_;
  GPoly eta_;
};

/// de Rham part plus eta * d/dt.
Derivation twisted_q(const TwistData& t);

/// eta -> eta + d(alpha); alpha must be a base-only n-form.
TwistData gauge_change(const TwistData& t, const GPoly& alpha);

/// Verifies Q_eta o phi = phi o Q_{eta + d alpha} on every generator, where
/// phi is the fibre shift t -> t + alpha.
bool gauge_shift_intertwines(const TwistData& t, const GPoly& alpha);

// ---------------------------------------------------------------------------
// Quadratic Lie algebras

using StructureConstants = std::vector<std::vector<std::vector<Rational>>>;  // c[k][i][j]

/// First violated Jacobi triple of c, if any ("i j k").
std::optional<std::string> jacobi_violation(const StructureConstants& c);

class QuadraticLieAlgebra {
 public:
  /// Validates antisymmetry, Jacobi, symmetry, nondegeneracy and invariance
  /// of the metric; throws StructureError on failure.
  QuadraticLieAlgebra(StructureConstants c, RMatrix metric);

  static QuadraticLieAlgebra so3();
  /// Basis (h, e, f) with the trace form <h,h> = 2, <e,f> = 1.
  static QuadraticLieAlgebra sl2();
  static QuadraticLieAlgebra abelian(std::size_t d);

  std::size_t dim() const { return c_.size(); }
  const StructureConstants& structure() const { return c_; }
  const RMatrix& metric() const { return metric_; }

  std::vector<Rational> bracket(const std::vector<Rational>& u, const std::vector<Rational>& v) const;
  Rational pairing(const std::vector<Rational>& u, const std::vector<Rational>& v) const;
  /// <e_i, [e_j, e_k]>.
  Rational cartan_coefficient(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  StructureConstants c_;
  RMatrix metric_;
};

/// True iff <[u,v],w> + <v,[u,w]> = 0 on all basis triples.
bool metric_is_invariant(const StructureConstants& c, const RMatrix& metric);

/// Chevalley-Eilenberg differential on the g[1] chart xi1..xid.
Derivation chevalley_eilenberg_q(const StructureConstants& c);

/// eta = 1/6 <e_i,[e_j,e_k]> xi^i xi^j xi^k on the g[1] chart.
GPoly cartan_3form(const QuadraticLieAlgebra& g);

/// Finite-dimensional graded Lie algebra with a degree-1 differential, given
/// on a homogeneous basis.
class GradedLieAlgebra {
 public:
  using Vec = std::vector<Rational>;

  GradedLieAlgebra(std::vector<std::string> names, std::vector<int> degrees);

  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t a) const { return names_[a]; }
  int degree(std::size_t a) const { return degrees_[a]; }

  /// Sets [e_a, e_b] and, by graded antisymmetry, [e_b, e_a].
  void set_bracket(std::size_t a, std::size_t b, Vec value);
  void set_differential(std::size_t a, Vec value);

  Vec basis(std::size_t a) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec differential(const Vec& x) const;

  /// Exhaustive graded Jacobi check on basis triples; returns the first
  /// failing triple.
  std::optional<std::string> jacobi_violation() const;
  /// Q[a,b] = [Qa,b] + (-1)^{|a|}[a,Qb] on basis pairs.
  std::optional<std::string> derivation_violation() const;
  bool differential_squares_to_zero() const;
  bool degrees_consistent() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::vector<std::vector<Vec>> bracket_;
  std::vector<Vec> differential_;
};

/// g + g[1] + R[2] with [u[1], v[1]] = <u,v> c and Q(u[1]) = u. Basis order:
/// e_1..e_d (degree 0), e_1[1]..e_d[1] (degree -1), c (degree -2).
GradedLieAlgebra central_extension(const QuadraticLieAlgebra& g);

struct CocycleResult {
  bool holds = true;
  std::string witness;  // first failing triple when !holds
};

/// Mode weight w(m) in c(u z^m, v z^n) = w(m) delta_{m+n,0} <u,v>.
using ModeWeight = std::function<Rational(int)>;

/// 2-cocycle identity on span{u z^m : |m| <= cutoff}. Default weight w(m) = m.
CocycleResult affine_cocycle_check(const QuadraticLieAlgebra& g, int cutoff,
                                   const ModeWeight& weight = {});

// ---------------------------------------------------------------------------
// Symmetry pairs

/// (v, alpha): a polynomial vector field and an (n-1)-form on R^m, stored on
/// the chart of R[n] x T[1]R^m (x1..xm, xi1..xim, t).
struct SymmetryPair {
  ChartPtr chart;
  int n = 0;
  std::vector<GPoly> v;  // v^a(x), weight 0
  GPoly alpha;           // weight n - 1, no t

  void validate() const;
};

ChartPtr symmetry_chart(int m, int n);

/// Interior product i_v as a degree -1 derivation on the chart.
Derivation interior(const ChartPtr& chart, const std::vector<GPoly>& v);

/// Degree -1 derivation with iota(xi^a) = v^a and iota(t) = alpha.
Derivation iota_encode(const SymmetryPair& s);
/// Inverse of iota_encode; throws DomainError when d is not of that form.
SymmetryPair iota_decode(const Derivation& d, int n);

/// ([v1, v2], L_{v1} alpha2 - i_{v2} d alpha1).
SymmetryPair symmetry_bracket(const SymmetryPair& s1, const SymmetryPair& s2);

/// v contracted into alpha.
GPoly contraction(const SymmetryPair& s);

/// Q of the trivialized bundle (de Rham, Q(t) = 0).
Derivation symmetry_q(const ChartPtr& chart);

/// Searches low-degree pairs for (s1, s2) with bracket(s1,s2) != -bracket(s2,s1).
std::optional<std::pair<SymmetryPair, SymmetryPair>> find_nonskew_witness(int m, int n);

std::string to_string(const SymmetryPair& s);
bool operator==(const SymmetryPair& a, const SymmetryPair& b);

}  // namespace gq
