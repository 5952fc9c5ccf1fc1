#pragma once

// Lattice models of sections complexes: simplicial cochains of triangulated
// surfaces and of the interval, with cup-product pairings, tensored with a
// fibre.

#include "gq/extensions.hpp"
#include "gq/symplectic_complexes.hpp"

#include <array>
#include <vector>

namespace gq {

/// Ordered 2-dimensional simplicial complex with an orientation sign per
/// triangle. Edges are directed consistently with the vertex order of every
/// triangle containing them.
struct Simplicial2 {
  std::size_t vertices = 0;
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::array<std::size_t, 3>> triangles;
  std::vector<int> orientation;

  /// m1 x m2 squares, each split into (v00, v10, v11) with sign +1 and
  /// (v00, v01, v11) with sign -1. Periodic directions need at least 3
  /// squares.
  static Simplicial2 grid(int m1, int m2, bool periodic1, bool periodic2);
};

enum class Surface { Torus, Cylinder, Disk };

/// Cochains of the surface valued in g; d is the simplicial coboundary and
/// the pairing is the cup product integrated over the fundamental chain,
/// composed with the metric of g. The boundary is the cochain complex of the
/// boundary cycle with its induced orientation. Pairing degree 2.
RelativeComplex lattice_model(Surface s, int m1, int m2, const QuadraticLieAlgebra& g);

/// Same construction from an explicit triangulation.
RelativeComplex simplicial_model(const Simplicial2& k, const QuadraticLieAlgebra& g);

/// [0,1] with m segments and cup-product pairing, valued in g; boundary the
/// two end points with orientation -1 at 0 and +1 at 1. Pairing degree 1.
RelativeComplex interval_cup_model(int m, const QuadraticLieAlgebra& g);

/// [0,1] with m segments and fibre the double C (+) C*[n]: the C-part uses
/// primal cochains (vertices, edges), the C*-part dual cochains vanishing at
/// the ends, so the chain-level pairing (degree n + 1) is nondegenerate.
/// The boundary is the fibre at 0 with pairing -omega, restricted from the
/// C-part. With both_ends the fibre at 1 (pairing +omega) is added; Stokes
/// still holds but Z = (B_0)^perp then fails by the extra end value, since a
/// finite nondegenerate model has Euler characteristic 0 and cannot carry
/// both constant sections.
RelativeComplex interval_model(int m, const GradedComplex& c, int n, bool both_ends = false);

/// C concentrated in degree 0 with dimension 1.
GradedComplex point_complex();

}  // namespace gq
