#pragma once

// Sampled maps f: [0,1]^2 -> SU(2) together with a per-cell 2-form, and the
// product (f1, w1)(f2, w2) = (f1 f2, w1 + w2 + <f1* theta_l, f2* theta_r>).
//
// SU(2) is represented by unit quaternions; its Lie algebra by imaginary
// quaternions (as 3-vectors) with [u,v] = uv - vu = 2 u x v and the invariant
// pairing <u,v> = u . v.

#include "gq/graded_algebra.hpp"

#include <Eigen/Geometry>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gq {

using Quat = Eigen::Quaterniond;
using Vec3 = Eigen::Vector3d;

/// Principal logarithm of a unit quaternion as an imaginary 3-vector.
Vec3 quat_log(const Quat& q);
Quat quat_exp(const Vec3& v);
Vec3 su2_bracket(const Vec3& u, const Vec3& v);
/// <u, [v, w]>.
double su2_cartan(const Vec3& u, const Vec3& v, const Vec3& w);

class GridMap {
 public:
  /// nx x ny nodes (both >= 2); nodes start at the identity and all cell
  /// values at 0.
  GridMap(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  const Quat& node(int i, int j) const { return nodes_[index(i, j)]; }
  /// Stores q; throws DomainError unless |q| = 1 within 1e-12.
  void set_node(int i, int j, const Quat& q);

  /// Value of omega on cell [i,i+1] x [j,j+1] (the integral over the cell).
  double omega(int i, int j) const { return omega_[cell_index(i, j)]; }
  void set_omega(int i, int j, double w) { omega_[cell_index(i, j)] = w; }

  /// Samples f at the nodes of the uniform grid on [0,1]^2.
  static GridMap sample(int nx, int ny, const std::function<Quat(double, double)>& f);

  void write(std::ostream& os) const;
  static GridMap read(std::istream& is);
  static GridMap load(const std::string& path);

 private:
  std::size_t index(int i, int j) const;
  std::size_t cell_index(int i, int j) const;

  int nx_, ny_;
  std::vector<Quat> nodes_;
  std::vector<double> omega_;
};

/// Discrete <f1* theta_l, f2* theta_r> on cell (i,j): left logarithms of f1
/// and right logarithms of f2 along the cell edges, averaged over the two
/// parallel edges, combined as <A_x, B_y> - <A_y, B_x>.
double cross_term(const GridMap& a, const GridMap& b, int i, int j);

/// Pointwise product with the cross term added cell by cell.
GridMap wzw_product(const GridMap& a, const GridMap& b);

/// Largest |omega| difference between (ab)c and a(bc); node values are
/// compared exactly up to rounding.
struct AssociativityResidual {
  double node = 0;
  double omega = 0;
};
AssociativityResidual wzw_associativity(const GridMap& a, const GridMap& b, const GridMap& c);

using SU2Field3 = std::function<Quat(double, double, double)>;

/// On the uniform cube grid of [0,1]^3 with k cells per side, the largest
/// per-unit-volume discrepancy between the flux of the cross term X(f1, f2)
/// through each cube's boundary and -(f*eta - f1*eta - f2*eta), where
/// f = f1 f2 and f*eta(x,y,z) = <theta_x, [theta_y, theta_z]> with theta the
/// left Maurer-Cartan form.
double cross_term_defect(const SU2Field3& f1, const SU2Field3& f2, int k);

}  // namespace gq
