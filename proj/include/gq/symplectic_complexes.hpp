#pragma once

// Finite graded cochain complexes over Q with degree-N pairings, relative
// complexes (total, boundary, restriction) and the linear algebra behind
// Poincare-Lefschetz duality statements.
//
// Conventions:
//   d_k : C^k -> C^{k+1} is a dim(k+1) x dim(k) matrix.
//   A pairing of degree N is a family P_k of dim(k) x dim(N-k) matrices,
//   <u, v> = u^T P_k v for u in C^k, v in C^{N-k}.
//   Compatibility (closed case): <du, v> + (-1)^k <u, dv> = 0, i.e.
//     d_k^T P_{k+1} + (-1)^k P_k d_{N-k-1} = 0.
//   Stokes (relative case): <ru, rv>_bd = <du, v> + (-1)^k <u, dv>, with the
//   boundary pairing of degree N - 1.
//   Symmetry on cohomology: <u, v> = (-1)^{|u||v|} <v, u>.

#include "gq/rational_matrix.hpp"
#include "gq/sigma_structures.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gq {

class GradedComplex {
 public:
  GradedComplex() = default;
  /// Missing differentials are zero. Throws StructureError when a
  /// differential has the wrong shape or d_{k+1} d_k != 0.
  GradedComplex(std::map<int, std::size_t> dims, std::map<int, RMatrix> d);

  std::size_t dim(int k) const;
  /// d_k with the right shape even when stored implicitly as zero.
  RMatrix d(int k) const;
  const std::map<int, std::size_t>& dims() const { return dims_; }
  /// Degrees with nonzero dimension, ascending.
  std::vector<int> degrees() const;
  std::size_t total_dim() const;
  int euler_characteristic() const;

 private:
  std::map<int, std::size_t> dims_;
  std::map<int, RMatrix> d_;
};

struct Cohomology {
  std::map<int, std::size_t> dims;
  std::map<int, RMatrix> cocycles;         // basis of Z^k (columns)
  std::map<int, RMatrix> coboundaries;     // basis of B^k (columns)
  std::map<int, RMatrix> representatives;  // cocycles completing B^k to Z^k

  std::size_t dim(int k) const;
};

Cohomology cohomology(const GradedComplex& c);

class SymplecticComplex {
 public:
  SymplecticComplex() = default;
  /// Shapes are validated; compatibility is not (relative totals are not
  /// compatible). Missing blocks are zero.
  SymplecticComplex(GradedComplex c, int degree, std::map<int, RMatrix> pairing);

  const GradedComplex& complex() const { return c_; }
  int degree() const { return n_; }
  RMatrix pairing(int k) const;

  /// First degree k where d_k^T P_{k+1} + (-1)^k P_k d_{N-k-1} != 0.
  std::optional<int> compatibility_violation() const;
  /// Every P_k square and invertible.
  bool nondegenerate() const;

 private:
  GradedComplex c_;
  int n_ = 0;
  std::map<int, RMatrix> p_;
};

struct CohomologyPairing {
  Cohomology h;
  std::map<int, RMatrix> induced;  // representatives^T P_k representatives
  bool nondegenerate = true;
  /// Graded symmetry <u,v> = (-1)^{|u||v|} <v,u> on cohomology.
  bool graded_symmetric = true;
};

/// Throws StructureError naming the offending degree when the pairing is
/// not compatible with d, or when a cocycle pairs nontrivially with a
/// coboundary.
CohomologyPairing cohomology_pairing(const SymplecticComplex& s);

class RelativeComplex {
 public:
  /// Validates that restriction is a chain map and that the Stokes identity
  /// holds exactly; throws StructureError otherwise.
  RelativeComplex(SymplecticComplex total, SymplecticComplex boundary, std::map<int, RMatrix> restriction);

  /// Closed case: empty boundary, sub = total.
  static RelativeComplex closed(SymplecticComplex total);

  const SymplecticComplex& total() const { return total_; }
  const SymplecticComplex& boundary() const { return boundary_; }
  RMatrix restriction(int k) const;
  /// Basis of ker r_k in C^k (columns), i.e. the inclusion of Gamma_0.
  const RMatrix& sub_inclusion(int k) const;
  /// The kernel subcomplex in its own basis.
  const GradedComplex& sub() const { return sub_; }

 private:
  SymplecticComplex total_, boundary_;
  std::map<int, RMatrix> r_;
  std::map<int, RMatrix> incl_;
  GradedComplex sub_;
};

enum class Lemma3Mode { Strict, Degraded };

struct Lemma3Degree {
  int degree = 0;
  std::size_t z = 0, b0 = 0, b0_perp = 0;
  bool equal = false;     // Z^k = (B_0)^perp
  bool included = false;  // Z^k in (B_0)^perp
};

struct Lemma3Result {
  Lemma3Mode mode = Lemma3Mode::Strict;
  std::vector<Lemma3Degree> degrees;
  bool holds = false;
  /// Strict mode: dimensions of Z/B_0 and nondegeneracy of the induced form.
  std::map<int, std::size_t> quotient_dims;
  bool quotient_nondegenerate = false;
  /// Degraded mode: the relative-absolute pairing H(Gamma_0) x H(Gamma) is
  /// nondegenerate.
  bool cohomology_nondegenerate = false;
  std::string report;
};

/// Z = (B_0)^perp in each degree; degraded to the inclusion plus the
/// cohomology-level statement when the chain-level pairing is degenerate.
Lemma3Result lemma3_orthogonality(const RelativeComplex& r);

/// Pairing between H^k(Gamma_0) and H^{N-k}(Gamma).
struct RelativePairing {
  std::map<int, RMatrix> induced;
  bool nondegenerate = true;
};
RelativePairing relative_pairing(const RelativeComplex& r);

struct LagrangianResult {
  std::map<int, std::size_t> image_dims;     // dim of image of H^k -> H^k(bd)
  std::map<int, std::size_t> boundary_dims;  // dim H^k(bd)
  bool isotropic = false;
  bool half_dimension = false;
  bool boundary_nondegenerate = false;
  bool lagrangian() const { return isotropic && half_dimension && boundary_nondegenerate; }
};

/// Image of H(total) -> H(boundary): isotropy and half dimension.
LagrangianResult boundary_lagrangian(const RelativeComplex& r);

/// (A (x) B)^k = sum_{i+j=k} A^i (x) B^j with d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db.
GradedComplex tensor(const GradedComplex& a, const GradedComplex& b);

/// C (+) C*[N]: C*[N]^k = (C^{N-k})* with the transpose differential, and the
/// canonical pairing; nondegenerate and compatible.
SymplecticComplex double_complex(const GradedComplex& c, int n);

struct SuspensionResult {
  std::map<int, std::size_t> base;      // H^k(C0)
  std::map<int, std::size_t> relative;  // H^k of C0 (x) C(B^n, S^{n-1})
  bool shifted = false;                 // relative[k + n] == base[k] for all k
  /// Lowest degree of C0 (the "-d" bound) and whether H^0 of the relative
  /// complex vanishes, as it must when n > d.
  int lower_bound = 0;
  bool degree0_vanishes = false;
};

/// Relative cochains of the n-cube modulo its boundary (m segments per side)
/// tensored with C0; relative cohomology in degree k + n equals H^k(C0).
SuspensionResult suspension_check(const GradedComplex& c0, int n, int segments = 2);

/// Cubical cochains of ([0,1]^n, boundary) with m segments per side.
GradedComplex relative_cube(int n, int segments);

// ---------------------------------------------------------------------------
// NMap

struct NMapComponent {
  std::string coordinate;
  int weight = 0;
  std::vector<std::vector<int>> forms;  // increasing index sets of size weight
};

struct NMapSpace {
  int n = 0;
  std::vector<NMapComponent> components;
  RMatrix pairing;  // antisymmetric, on the concatenated component bases
  std::size_t total_dim() const;
  bool nondegenerate() const;
};

/// Maps V[1] -> Y with dim V = n: a weight-k coordinate becomes a
/// Lambda^k V*-valued component; the form pairs q_I with p_J (I, J
/// complementary) with the sign of the shuffle (I, J) times {p, q}.
/// Throws DomainError unless Y has degree n.
NMapSpace nmap_space(const DarbouxChart& y, int n);

// ---------------------------------------------------------------------------
// Interchange format

void write_complex(std::ostream& os, const SymplecticComplex& s);
void write_complex(std::ostream& os, const GradedComplex& c);
/// Reads either form; a complex without a pairing section gets degree 0 and
/// zero pairing, and `has_pairing` reports which one was read.
SymplecticComplex read_complex(std::istream& is, bool* has_pairing = nullptr);
SymplecticComplex load_complex(const std::string& path, bool* has_pairing = nullptr);

}  // namespace gq
