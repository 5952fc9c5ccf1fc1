#pragma once

// Numeric A-paths: matrix Lie algebra paths a(t) on [0,1], optionally with
// base samples gamma(t) for a linear action algebroid (rho(a) gamma = a gamma).
// Holonomy solves the left-invariant ODE g' = g a, g(0) = I, with classical
// RK4 on a uniform grid.

#include "gq/graded_algebra.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gq {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

class CompositionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InconsistentPathError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Samples (t_j, a_j[, gamma_j]); a(t) is linear between samples. Repeated
/// times mark a jump (left and right limits), as produced by concatenation.
class APath {
 public:
  APath(std::vector<double> t, std::vector<Mat> a, std::vector<Vec> gamma = {});

  static APath constant(const Mat& x);
  static APath zero(int dim);

  int dim() const { return static_cast<int>(a_.front().rows()); }
  std::size_t size() const { return t_.size(); }
  const std::vector<double>& times() const { return t_; }
  const std::vector<Mat>& values() const { return a_; }
  const std::vector<Vec>& base() const { return gamma_; }
  bool has_base() const { return !gamma_.empty(); }

  /// a(t); at a jump `right` selects the right limit.
  Mat at(double t, bool right = true) const;

  void write(std::ostream& os) const;
  static APath read(std::istream& is);
  static APath load(const std::string& path);

 private:
  std::vector<double> t_;
  std::vector<Mat> a_;
  std::vector<Vec> gamma_;
};

struct GroupoidElement {
  Vec source, target;  // empty for plain Lie algebra paths
  Mat holonomy;
};

/// g(1) for g' = g a, g(0) = I. steps >= 1.
GroupoidElement integrate(const APath& p, int steps);

/// p then q, each run at double speed on half of [0,1]. For paths with base
/// samples, the end of p must match the start of q within 1e-9.
APath concatenate(const APath& p, const APath& q);

/// t -> 1 - t, a -> -a; its holonomy is the inverse.
APath reverse(const APath& p);

struct Reparam {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
};

/// |integrate(p) - integrate(p o phi)|_F where (p o phi)(s) = phi'(s) a(phi(s)),
/// resampled at refine * steps + 1 uniform points. Throws DomainError unless
/// phi(0) = 0, phi(1) = 1 and phi is monotone on the samples.
double reparametrize_check(const APath& p, const Reparam& phi, int steps, int refine = 1);

struct ActionOptions {
  /// Largest allowed midpoint residual of gamma' = a gamma on the samples, and
  /// of the distance between the transported endpoint and the last sample.
  double anchor_tolerance = 1e-3;
  /// Agreement between the two ways of computing the target.
  double target_tolerance = 1e-6;
};

/// Transformation algebroid of a linear action on R^m. The holonomy is U(1)
/// for U' = a U, U(0) = I, so that target = U(1) source. Throws
/// InconsistentPathError when the base samples do not follow the anchor.
GroupoidElement action_integrate(const APath& p, int steps, const ActionOptions& opt = {});

/// Largest midpoint residual |(g_{j+1} - g_j)/dt - a_mid g_mid| over the samples.
double anchor_residual(const APath& p);

/// |g^T g - I|_F and |det g - 1|.
double orthogonality_residual(const Mat& g);
double determinant_residual(const Mat& g);

}  // namespace gq
