#include "gq/apath.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gq {

APath::APath(std::vector<double> t, std::vector<Mat> a, std::vector<Vec> gamma)
    : t_(std::move(t)), a_(std::move(a)), gamma_(std::move(gamma)) {
  if (t_.size() < 2 || a_.size() != t_.size()) throw DomainError("path needs at least two samples");
  if (t_.front() != 0.0 || t_.back() != 1.0) throw DomainError("path samples must span [0,1]");
  for (std::size_t j = 1; j < t_.size(); ++j) {
    if (t_[j] < t_[j - 1]) throw DomainError("path times must be increasing");
    if (j >= 2 && t_[j] == t_[j - 1] && t_[j - 1] == t_[j - 2])
      throw DomainError("at most two samples may share a time");
  }
  const auto n = a_.front().rows();
  for (const auto& m : a_)
    if (m.rows() != n || m.cols() != n) throw DomainError("path values must be square of one size");
  if (!gamma_.empty()) {
    if (gamma_.size() != t_.size()) throw DomainError("one base sample per time sample");
    for (const auto& g : gamma_)
      if (g.size() != n) throw DomainError("base samples must have the matrix dimension");
  }
}

APath APath::constant(const Mat& x) { return APath({0.0, 1.0}, {x, x}); }

APath APath::zero(int dim) { return constant(Mat::Zero(dim, dim)); }

Mat APath::at(double t, bool right) const {
  if (t <= t_.front()) return a_.front();
  if (t >= t_.back()) return a_.back();
  // First sample strictly after t (right) or at-or-after t (left).
  auto it = right ? std::upper_bound(t_.begin(), t_.end(), t) : std::lower_bound(t_.begin(), t_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - t_.begin());
  std::size_t lo = hi - 1;
  if (!right && t_[hi] == t) return a_[hi];
  if (right && t_[lo] == t) return a_[lo];
  const double s = (t - t_[lo]) / (t_[hi] - t_[lo]);
  return (1 - s) * a_[lo] + s * a_[hi];
}

void APath::write(std::ostream& os) const {
  os.precision(17);
  os << "dim " << dim() << "\n";
  for (std::size_t j = 0; j < t_.size(); ++j) {
    os << t_[j];
    for (int r = 0; r < dim(); ++r)
      for (int c = 0; c < dim(); ++c) os << " " << a_[j](r, c);
    if (has_base())
      for (int r = 0; r < dim(); ++r) os << " " << gamma_[j](r);
    os << "\n";
  }
}

APath APath::read(std::istream& is) {
  std::string line;
  int lineno = 0, dim = -1;
  std::vector<double> t;
  std::vector<Mat> a;
  std::vector<Vec> gamma;
  auto fail = [&](const std::string& what) {
    throw DomainError("apath line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (dim < 0) {
      if (first != "dim" || !(ls >> dim) || dim < 1) fail("expected header 'dim m'");
      continue;
    }
    std::vector<double> f;
    try {
      f.push_back(std::stod(first));
    } catch (const std::exception&) {
      fail("non-numeric field '" + first + "'");
    }
    double x;
    while (ls >> x) f.push_back(x);
    if (!ls.eof()) fail("non-numeric field");
    const std::size_t m2 = static_cast<std::size_t>(dim) * dim;
    if (f.size() != 1 + m2 && f.size() != 1 + m2 + dim)
      fail("expected t followed by " + std::to_string(m2) + " matrix entries and optionally " +
           std::to_string(dim) + " base coordinates");
    const bool with_base = f.size() == 1 + m2 + dim;
    if (!t.empty() && with_base != !gamma.empty()) fail("base coordinates must be given on every line or none");
    t.push_back(f[0]);
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = f[1 + r * dim + c];
    a.push_back(m);
    if (with_base) gamma.push_back(Eigen::Map<Vec>(f.data() + 1 + m2, dim));
  }
  if (dim < 0) fail("empty path file");
  try {
    return APath(std::move(t), std::move(a), std::move(gamma));
  } catch (const DomainError& e) {
    throw DomainError(std::string("apath: ") + e.what());
  }
}

APath APath::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open path file '" + path + "'");
  return read(in);
}

namespace {

// One RK4 run of y' = f(t, y) on [0,1]; a(t) is sampled with right limits at
// the start of each step and left limits at its end.
template <class F>
Mat rk4(const APath& p, int steps, Mat y, F rhs) {
  if (steps < 1) throw DomainError("steps must be positive");
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const double t0 = k * h, t1 = (k + 1 == steps) ? 1.0 : (k + 1) * h;
    const Mat a0 = p.at(t0, true), am = p.at(t0 + 0.5 * h), a1 = p.at(t1, false);
    const Mat k1 = rhs(y, a0);
    const Mat k2 = rhs(y + 0.5 * h * k1, am);
    const Mat k3 = rhs(y + 0.5 * h * k2, am);
    const Mat k4 = rhs(y + h * k3, a1);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

}  // namespace

GroupoidElement integrate(const APath& p, int steps) {
  GroupoidElement g;
  g.holonomy = rk4(p, steps, Mat::Identity(p.dim(), p.dim()),
                   [](const Mat& y, const Mat& a) -> Mat { return y * a; });
  if (p.has_base()) {
    g.source = p.base().front();
    g.target = p.base().back();
  }
  return g;
}

APath concatenate(const APath& p, const APath& q) {
  if (p.dim() != q.dim()) throw CompositionError("paths have different dimensions");
  if (p.has_base() != q.has_base()) throw CompositionError("cannot compose a base path with a plain one");
  if (p.has_base() && (p.base().back() - q.base().front()).norm() > 1e-9)
    throw CompositionError("end point of the first path does not match the start of the second");
  std::vector<double> t;
  std::vector<Mat> a;
  std::vector<Vec> gamma;
  for (std::size_t j = 0; j < p.size(); ++j) {
    t.push_back(0.5 * p.times()[j]);
    a.push_back(2.0 * p.values()[j]);
    if (p.has_base()) gamma.push_back(p.base()[j]);
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    t.push_back(0.5 + 0.5 * q.times()[j]);
    a.push_back(2.0 * q.values()[j]);
    if (q.has_base()) gamma.push_back(q.base()[j]);
  }
  return APath(std::move(t), std::move(a), std::move(gamma));
}

APath reverse(const APath& p) {
  std::vector<double> t;
  std::vector<Mat> a;
  std::vector<Vec> gamma;
  for (std::size_t j = p.size(); j-- > 0;) {
    t.push_back(1.0 - p.times()[j]);
    a.push_back(-p.values()[j]);
    if (p.has_base()) gamma.push_back(p.base()[j]);
  }
  t.front() = 0.0;
  return APath(std::move(t), std::move(a), std::move(gamma));
}

double reparametrize_check(const APath& p, const Reparam& r, int steps, int refine) {
  if (!r.phi || !r.dphi) throw DomainError("reparametrization needs phi and phi'");
  if (refine < 1) throw DomainError("refine must be positive");
  if (std::abs(r.phi(0.0)) > 1e-12 || std::abs(r.phi(1.0) - 1.0) > 1e-12)
    throw DomainError("reparametrization must fix 0 and 1");
  const int m = refine * steps;
  std::vector<double> s(m + 1), phis(m + 1);
  bool identity = true;
  for (int k = 0; k <= m; ++k) {
    s[k] = (k == m) ? 1.0 : double(k) / m;
    phis[k] = r.phi(s[k]);
    if (k > 0 && phis[k] < phis[k - 1]) throw DomainError("reparametrization is not monotone");
    if (r.dphi(s[k]) < 0) throw DomainError("reparametrization is not monotone");
    identity = identity && phis[k] == s[k] && r.dphi(s[k]) == 1.0;
  }
  const Mat g0 = integrate(p, steps).holonomy;
  // The identity reparametrization reuses p itself.
  if (identity) return (g0 - integrate(p, steps).holonomy).norm();
  std::vector<Mat> a(m + 1);
  for (int k = 0; k <= m; ++k) a[k] = r.dphi(s[k]) * p.at(std::clamp(phis[k], 0.0, 1.0));
  APath q(std::move(s), std::move(a));
  return (g0 - integrate(q, steps).holonomy).norm();
}

double anchor_residual(const APath& p) {
  if (!p.has_base()) return 0;
  double worst = 0;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    const double dt = p.times()[j + 1] - p.times()[j];
    if (dt == 0) {
      // A jump in a is allowed; a jump in the base point is not.
      if ((p.base()[j + 1] - p.base()[j]).norm() > 0) return INFINITY;
      continue;
    }
    const Vec slope = (p.base()[j + 1] - p.base()[j]) / dt;
    const Vec mid = 0.5 * (p.base()[j + 1] + p.base()[j]);
    const Mat amid = 0.5 * (p.values()[j + 1] + p.values()[j]);
    worst = std::max(worst, (slope - amid * mid).norm());
  }
  return worst;
}

GroupoidElement action_integrate(const APath& p, int steps, const ActionOptions& opt) {
  if (!p.has_base()) throw DomainError("action paths need base samples");
  const double res = anchor_residual(p);
  if (!(res <= opt.anchor_tolerance))
    throw InconsistentPathError("base curve does not follow the anchor (residual " + std::to_string(res) + ")");
  GroupoidElement g;
  g.source = p.base().front();
  g.holonomy = rk4(p, steps, Mat::Identity(p.dim(), p.dim()),
                   [](const Mat& y, const Mat& a) -> Mat { return a * y; });
  const Mat transported = rk4(p, steps, Mat(g.source), [](const Mat& y, const Mat& a) -> Mat { return a * y; });
  g.target = transported.col(0);
  const double disagree = (g.target - g.holonomy * g.source).norm();
  if (disagree > opt.target_tolerance)
    throw InconsistentPathError("transported base point disagrees with the holonomy");
  if ((g.target - p.base().back()).norm() > opt.anchor_tolerance)
    throw InconsistentPathError("base curve end point does not match the transported point");
  return g;
}

double orthogonality_residual(const Mat& g) {
  return (g.transpose() * g - Mat::Identity(g.rows(), g.cols())).norm();
}

double determinant_residual(const Mat& g) { return std::abs(g.determinant() - 1.0); }

}  // namespace gq
