#include "gq/symplectic_complexes.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace gq {

namespace {

int sign(int k) { return (k & 1) ? -1 : 1; }

bool square_invertible(const RMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

void place(RMatrix& target, const RMatrix& block, std::size_t r0, std::size_t c0, const Rational& s = 1) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c)
      if (block(r, c) != 0) target(r0 + r, c0 + c) += s * block(r, c);
}

// Coordinates of the columns of v in the basis given by the columns of b.
RMatrix coordinates(const RMatrix& b, const RMatrix& v) {
  RMatrix out(b.cols(), v.cols());
  for (std::size_t c = 0; c < v.cols(); ++c) {
    auto x = solve(b, v.column(c));
    if (!x) throw StructureError("vector is not in the span of the basis");
    for (std::size_t r = 0; r < b.cols(); ++r) out(r, c) = (*x)(r, 0);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedComplex

GradedComplex::GradedComplex(std::map<int, std::size_t> dims, std::map<int, RMatrix> d)
    : dims_(std::move(dims)), d_(std::move(d)) {
  for (auto it = dims_.begin(); it != dims_.end();)
    it = it->second == 0 ? dims_.erase(it) : std::next(it);
  for (const auto& [k, m] : d_)
    if (m.rows() != dim(k + 1) || m.cols() != dim(k))
      throw StructureError("differential d_" + std::to_string(k) + " has shape " + std::to_string(m.rows()) +
                           "x" + std::to_string(m.cols()) + ", expected " + std::to_string(dim(k + 1)) + "x" +
                           std::to_string(dim(k)));
  for (const auto& [k, m] : d_) {
    auto next = d_.find(k + 1);
    if (next == d_.end() || m.empty() || next->second.empty()) continue;
    if (!(next->second * m).is_zero()) throw StructureError("d^2 != 0 at degree " + std::to_string(k));
  }
}

std::size_t GradedComplex::dim(int k) const {
  auto it = dims_.find(k);
  return it == dims_.end() ? 0 : it->second;
}

RMatrix GradedComplex::d(int k) const {
  auto it = d_.find(k);
  if (it != d_.end()) return it->second;
  return RMatrix(dim(k + 1), dim(k));
}

std::vector<int> GradedComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [k, n] : dims_)
    if (n > 0) out.push_back(k);
  return out;
}

std::size_t GradedComplex::total_dim() const {
  std::size_t s = 0;
  for (const auto& [k, n] : dims_) s += n;
  return s;
}

int GradedComplex::euler_characteristic() const {
  int s = 0;
  for (const auto& [k, n] : dims_) s += sign(k) * static_cast<int>(n);
  return s;
}

std::size_t Cohomology::dim(int k) const {
  auto it = dims.find(k);
  return it == dims.end() ? 0 : it->second;
}

Cohomology cohomology(const GradedComplex& c) {
  Cohomology h;
  for (int k : c.degrees()) {
    RMatrix z = nullspace(c.d(k));
    RMatrix b = column_basis(c.d(k - 1));
    if (b.cols() == 0) b = RMatrix(c.dim(k), 0);
    RMatrix reps = extend_basis(b, z);
    if (reps.cols() == 0) reps = RMatrix(c.dim(k), 0);
    h.cocycles[k] = z;
    h.coboundaries[k] = b;
    h.representatives[k] = reps;
    if (reps.cols() > 0) h.dims[k] = reps.cols();
  }
  return h;
}

// ---------------------------------------------------------------------------
// SymplecticComplex

SymplecticComplex::SymplecticComplex(GradedComplex c, int degree, std::map<int, RMatrix> pairing)
    : c_(std::move(c)), n_(degree), p_(std::move(pairing)) {
  for (const auto& [k, m] : p_)
    if (m.rows() != c_.dim(k) || m.cols() != c_.dim(n_ - k))
      throw StructureError("pairing block P_" + std::to_string(k) + " has the wrong shape");
}

RMatrix SymplecticComplex::pairing(int k) const {
  auto it = p_.find(k);
  if (it != p_.end()) return it->second;
  return RMatrix(c_.dim(k), c_.dim(n_ - k));
}

std::optional<int> SymplecticComplex::compatibility_violation() const {
  for (int k : c_.degrees()) {
    if (c_.dim(n_ - k - 1) == 0) continue;
    RMatrix lhs = c_.d(k).transpose() * pairing(k + 1) + pairing(k) * c_.d(n_ - k - 1) * Rational(sign(k));
    if (!lhs.is_zero()) return k;
  }
  return std::nullopt;
}

bool SymplecticComplex::nondegenerate() const {
  for (int k : c_.degrees())
    if (!square_invertible(pairing(k))) return false;
  return true;
}

CohomologyPairing cohomology_pairing(const SymplecticComplex& s) {
  if (auto k = s.compatibility_violation())
    throw StructureError("pairing is not compatible with d: <du,v> + (-1)^k <u,dv> != 0 for u in degree " +
                         std::to_string(*k));
  const GradedComplex& c = s.complex();
  const int n = s.degree();
  CohomologyPairing out;
  out.h = cohomology(c);
  for (int k : c.degrees()) {
    if (c.dim(n - k) == 0) continue;
    RMatrix zb = out.h.cocycles.at(k).transpose() * s.pairing(k) * out.h.coboundaries.at(n - k);
    if (!zb.is_zero())
      throw StructureError("a cocycle of degree " + std::to_string(k) + " pairs nontrivially with a coboundary");
  }
  std::set<int> seen;
  for (const auto& [k, dk] : out.h.dims) {
    seen.insert(k);
    seen.insert(n - k);
  }
  for (int k : seen) {
    const std::size_t a = out.h.dim(k), b = out.h.dim(n - k);
    RMatrix m(a, b);
    if (a > 0 && b > 0) m = out.h.representatives.at(k).transpose() * s.pairing(k) * out.h.representatives.at(n - k);
    if (!square_invertible(m)) out.nondegenerate = false;
    out.induced[k] = m;
  }
  for (const auto& [k, m] : out.induced) {
    auto other = out.induced.find(n - k);
    if (other == out.induced.end()) continue;
    if (!(m == other->second.transpose() * Rational(sign(k * (n - k))))) out.graded_symmetric = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// RelativeComplex

RelativeComplex::RelativeComplex(SymplecticComplex total, SymplecticComplex boundary,
                                 std::map<int, RMatrix> restriction_maps)
    : total_(std::move(total)), boundary_(std::move(boundary)), r_(std::move(restriction_maps)) {
  const GradedComplex& t = total_.complex();
  const GradedComplex& b = boundary_.complex();
  const int n = total_.degree();
  if (b.total_dim() > 0 && boundary_.degree() != n - 1)
    throw StructureError("boundary pairing must have degree " + std::to_string(n - 1));
  for (const auto& [k, m] : r_)
    if (m.rows() != b.dim(k) || m.cols() != t.dim(k))
      throw StructureError("restriction r_" + std::to_string(k) + " has the wrong shape");
  for (int k : t.degrees())
    if (!(restriction(k + 1) * t.d(k) == b.d(k) * restriction(k)))
      throw StructureError("restriction is not a chain map at degree " + std::to_string(k));
  for (int k : t.degrees()) {
    if (t.dim(n - 1 - k) == 0) continue;
    RMatrix lhs = restriction(k).transpose() * boundary_.pairing(k) * restriction(n - 1 - k);
    RMatrix rhs = t.d(k).transpose() * total_.pairing(k + 1) + total_.pairing(k) * t.d(n - 1 - k) * Rational(sign(k));
    if (!(lhs == rhs)) throw StructureError("Stokes identity fails for u in degree " + std::to_string(k));
  }
  std::map<int, std::size_t> dims;
  std::map<int, RMatrix> d;
  for (int k : t.degrees()) {
    RMatrix inc = nullspace(restriction(k));
    incl_[k] = inc;
    dims[k] = inc.cols();
  }
  for (int k : t.degrees()) {
    if (dims[k] == 0 || t.dim(k + 1) == 0) continue;
    d[k] = coordinates(incl_.at(k + 1), t.d(k) * incl_.at(k));
  }
  sub_ = GradedComplex(std::move(dims), std::move(d));
}

RelativeComplex RelativeComplex::closed(SymplecticComplex total) {
  const int n = total.degree();
  return RelativeComplex(std::move(total), SymplecticComplex(GradedComplex(), n - 1, {}), {});
}

RMatrix RelativeComplex::restriction(int k) const {
  auto it = r_.find(k);
  if (it != r_.end()) return it->second;
  return RMatrix(boundary_.complex().dim(k), total_.complex().dim(k));
}

const RMatrix& RelativeComplex::sub_inclusion(int k) const {
  static const RMatrix empty;
  auto it = incl_.find(k);
  return it == incl_.end() ? empty : it->second;
}

RelativePairing relative_pairing(const RelativeComplex& r) {
  const GradedComplex& t = r.total().complex();
  const int n = r.total().degree();
  Cohomology h0 = cohomology(r.sub()), h = cohomology(t);
  RelativePairing out;
  std::set<int> seen;
  for (const auto& [k, dk] : h0.dims) seen.insert(k);
  for (const auto& [k, dk] : h.dims) seen.insert(n - k);
  for (int k : seen) {
    const std::size_t a = h0.dim(k), b = h.dim(n - k);
    RMatrix m(a, b);
    if (a > 0 && b > 0)
      m = (r.sub_inclusion(k) * h0.representatives.at(k)).transpose() * r.total().pairing(k) *
          h.representatives.at(n - k);
    if (!square_invertible(m)) out.nondegenerate = false;
    out.induced[k] = m;
  }
  return out;
}

Lemma3Result lemma3_orthogonality(const RelativeComplex& r) {
  const GradedComplex& t = r.total().complex();
  const int n = r.total().degree();
  Lemma3Result out;
  out.mode = r.total().nondegenerate() ? Lemma3Mode::Strict : Lemma3Mode::Degraded;
  // B_0 in degree j as columns in C^j.
  auto b0 = [&](int j) -> RMatrix {
    if (t.dim(j) == 0) return RMatrix(0, 0);
    const RMatrix& inc = r.sub_inclusion(j - 1);
    if (inc.cols() == 0) return RMatrix(t.dim(j), 0);
    RMatrix b = column_basis(t.d(j - 1) * inc);
    return b.cols() == 0 ? RMatrix(t.dim(j), 0) : b;
  };
  bool all_equal = true, all_included = true;
  std::ostringstream rep;
  for (int k : t.degrees()) {
    Lemma3Degree row;
    row.degree = k;
    RMatrix z = nullspace(t.d(k));
    RMatrix pb = r.total().pairing(k) * (t.dim(n - k) ? b0(n - k) : RMatrix(0, 0));
    RMatrix perp = pb.cols() == 0 ? RMatrix::identity(t.dim(k)) : nullspace(pb.transpose());
    row.z = z.cols();
    row.b0 = b0(k).cols();
    row.b0_perp = perp.cols();
    row.included = span_contains(perp, z);
    row.equal = row.included && z.cols() == perp.cols();
    all_equal = all_equal && row.equal;
    all_included = all_included && row.included;
    rep << "degree " << k << ": dim Z = " << row.z << ", dim B0 = " << row.b0 << ", dim B0^perp = " << row.b0_perp
        << (row.equal ? " (equal)" : row.included ? " (included)" : " (NOT included)") << "\n";
    out.degrees.push_back(row);
  }
  if (out.mode == Lemma3Mode::Strict) {
    out.quotient_nondegenerate = true;
    std::map<int, RMatrix> reps;
    for (int k : t.degrees()) {
      RMatrix q = extend_basis(b0(k), nullspace(t.d(k)));
      if (q.cols() == 0) q = RMatrix(t.dim(k), 0);
      reps[k] = q;
      if (q.cols() > 0) out.quotient_dims[k] = q.cols();
    }
    for (const auto& [k, q] : reps) {
      auto other = reps.find(n - k);
      const std::size_t b = other == reps.end() ? 0 : other->second.cols();
      if (q.cols() == 0 && b == 0) continue;
      RMatrix m(q.cols(), b);
      if (q.cols() > 0 && b > 0) m = q.transpose() * r.total().pairing(k) * other->second;
      if (!square_invertible(m)) out.quotient_nondegenerate = false;
    }
    out.holds = all_equal && out.quotient_nondegenerate;
    out.cohomology_nondegenerate = relative_pairing(r).nondegenerate;
  } else {
    out.cohomology_nondegenerate = relative_pairing(r).nondegenerate;
    out.holds = all_included && out.cohomology_nondegenerate;
    rep << "chain-level pairing degenerate: checked Z in B0^perp and H(Gamma_0) x H(Gamma) duality ("
        << (out.cohomology_nondegenerate ? "nondegenerate" : "DEGENERATE") << ")\n";
  }
  out.report = rep.str();
  return out;
}

LagrangianResult boundary_lagrangian(const RelativeComplex& r) {
  LagrangianResult out;
  const GradedComplex& t = r.total().complex();
  const GradedComplex& b = r.boundary().complex();
  const int n = r.total().degree();
  out.boundary_nondegenerate = b.total_dim() == 0 || cohomology_pairing(r.boundary()).nondegenerate;
  Cohomology hb = cohomology(b);
  out.boundary_dims = hb.dims;
  std::map<int, RMatrix> image;  // r(Z^k) as columns in bd^k
  std::size_t image_total = 0, boundary_total = 0;
  for (const auto& [k, dk] : hb.dims) boundary_total += dk;
  for (int k : t.degrees()) {
    if (b.dim(k) == 0) continue;
    RMatrix rz = r.restriction(k) * nullspace(t.d(k));
    image[k] = rz;
    const RMatrix& bk = hb.coboundaries.count(k) ? hb.coboundaries.at(k) : RMatrix(b.dim(k), 0);
    std::size_t dim = rank(hstack(bk, rz)) - rank(bk);
    if (dim > 0) out.image_dims[k] = dim;
    image_total += dim;
  }
  out.isotropic = true;
  for (const auto& [k, rz] : image) {
    auto other = image.find(n - 1 - k);
    if (other == image.end() || rz.cols() == 0 || other->second.cols() == 0) continue;
    if (!(rz.transpose() * r.boundary().pairing(k) * other->second).is_zero()) out.isotropic = false;
  }
  out.half_dimension = 2 * image_total == boundary_total;
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

GradedComplex tensor(const GradedComplex& a, const GradedComplex& b) {
  // offsets[k][(i, j)] for blocks A^i (x) B^j of total degree k.
  std::map<int, std::map<std::pair<int, int>, std::size_t>> offsets;
  std::map<int, std::size_t> dims;
  for (int i : a.degrees())
    for (int j : b.degrees()) {
      const int k = i + j;
      offsets[k][{i, j}] = dims[k];
      dims[k] += a.dim(i) * b.dim(j);
    }
  std::map<int, RMatrix> d;
  for (const auto& [k, blocks] : offsets) {
    if (!dims.count(k + 1)) continue;
    RMatrix m(dims[k + 1], dims[k]);
    const auto& next = offsets[k + 1];
    for (const auto& [ij, off] : blocks) {
      auto [i, j] = ij;
      if (auto it = next.find({i + 1, j}); it != next.end())
        place(m, kron(a.d(i), RMatrix::identity(b.dim(j))), it->second, off);
      if (auto it = next.find({i, j + 1}); it != next.end())
        place(m, kron(RMatrix::identity(a.dim(i)), b.d(j)), it->second, off, sign(i));
    }
    d[k] = m;
  }
  return GradedComplex(std::move(dims), std::move(d));
}

SymplecticComplex double_complex(const GradedComplex& c, int n) {
  // F^k = C^k (+) (C^{n-k})*.
  std::map<int, std::size_t> dims;
  std::set<int> ks;
  for (int k : c.degrees()) {
    ks.insert(k);
    ks.insert(n - k);
  }
  for (int k : ks) dims[k] = c.dim(k) + c.dim(n - k);
  std::map<int, RMatrix> d, p;
  for (int k : ks) {
    if (!dims.count(k + 1)) continue;
    RMatrix m(dims[k + 1], dims[k]);
    place(m, c.d(k), 0, 0);
    // delta on (C^{n-k})*: -(-1)^j d_j^T with j = n - k - 1.
    const int j = n - k - 1;
    place(m, c.d(j).transpose(), c.dim(k + 1), c.dim(k), Rational(-sign(j)));
    d[k] = m;
  }
  for (int k : ks) {
    RMatrix m(dims[k], dims[n - k]);
    // <c, phi> = phi(c) for c in C^k, phi in (C^k)*.
    place(m, RMatrix::identity(c.dim(k)), 0, c.dim(n - k));
    // <phi, c'> = (-1)^{k(n-k)} phi(c') for phi in (C^{n-k})*, c' in C^{n-k}.
    place(m, RMatrix::identity(c.dim(n - k)), c.dim(k), 0, Rational(sign(k * (n - k))));
    p[k] = m;
  }
  return SymplecticComplex(GradedComplex(std::move(dims), std::move(d)), n, std::move(p));
}

GradedComplex relative_cube(int n, int segments) {
  if (n < 0 || segments < 1) throw DomainError("relative cube needs n >= 0 and at least one segment");
  GradedComplex cube({{0, 1}}, {});
  if (n == 0) return cube;
  // ([0,1], {0,1}): interior vertices in degree 0, edges in degree 1.
  const std::size_t m = static_cast<std::size_t>(segments);
  RMatrix d(m, m - 1);
  for (std::size_t v = 1; v < m; ++v) {
    d(v - 1, v - 1) = 1;  // edge [v-1, v] ends at v
    d(v, v - 1) = -1;     // edge [v, v+1] starts at v
  }
  GradedComplex interval({{0, m - 1}, {1, m}}, {{0, d}});
  GradedComplex out = interval;
  for (int i = 1; i < n; ++i) out = tensor(out, interval);
  return out;
}

SuspensionResult suspension_check(const GradedComplex& c0, int n, int segments) {
  SuspensionResult out;
  out.base = cohomology(c0).dims;
  out.relative = cohomology(tensor(c0, relative_cube(n, segments))).dims;
  out.shifted = out.relative.size() == out.base.size();
  for (const auto& [k, dk] : out.base) {
    auto it = out.relative.find(k + n);
    if (it == out.relative.end() || it->second != dk) out.shifted = false;
  }
  auto degs = c0.degrees();
  out.lower_bound = degs.empty() ? 0 : degs.front();
  out.degree0_vanishes = !out.relative.count(0);
  return out;
}

// ---------------------------------------------------------------------------
// NMap

std::size_t NMapSpace::total_dim() const {
  std::size_t s = 0;
  for (const auto& c : components) s += c.forms.size();
  return s;
}

bool NMapSpace::nondegenerate() const { return pairing.rows() == total_dim() && rank(pairing) == total_dim(); }

namespace {

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Sign of the permutation sorting the concatenation (I, J); 0 if they meet.
int shuffle_sign(const std::vector<int>& a, const std::vector<int>& b) {
  int inversions = 0;
  for (int x : a)
    for (int y : b) {
      if (x == y) return 0;
      if (x > y) ++inversions;
    }
  return sign(inversions);
}

}  // namespace

NMapSpace nmap_space(const DarbouxChart& y, int n) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (y.pair_count() > 0 && y.n() != n)
    throw DomainError("target must be symplectic of degree n = " + std::to_string(n));
  NMapSpace out;
  out.n = n;
  const ChartPtr& chart = y.chart();
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (std::size_t v = 0; v < chart->size(); ++v) {
    NMapComponent c;
    c.coordinate = chart->var(v).name;
    c.weight = chart->var(v).weight;
    std::vector<int> cur;
    if (c.weight <= n) subsets(n, c.weight, 0, cur, c.forms);
    offset.push_back(total);
    total += c.forms.size();
    out.components.push_back(std::move(c));
  }
  out.pairing = RMatrix(total, total);
  for (std::size_t i = 0; i < y.pair_count(); ++i) {
    const std::size_t q = y.q_index(i), p = y.p_index(i);
    const Rational& coeff = y.pairs()[i].coefficient;
    const auto& qf = out.components[q].forms;
    const auto& pf = out.components[p].forms;
    for (std::size_t a = 0; a < qf.size(); ++a)
      for (std::size_t b = 0; b < pf.size(); ++b) {
        const int s = shuffle_sign(qf[a], pf[b]);
        if (s == 0) continue;
        out.pairing(offset[q] + a, offset[p] + b) += coeff * s;
        out.pairing(offset[p] + b, offset[q] + a) -= coeff * s;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interchange format

namespace {

void write_matrix(std::ostream& os, const RMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << rational_to_string(m(r, c));
    os << "\n";
  }
}

void write_body(std::ostream& os, const GradedComplex& c) {
  for (int k : c.degrees()) os << "dim " << k << " " << c.dim(k) << "\n";
  for (int k : c.degrees()) {
    RMatrix d = c.d(k);
    if (d.empty() || d.is_zero()) continue;
    os << "d " << k << "\n";
    write_matrix(os, d);
  }
}

Rational parse_rational(const std::string& s, int line) {
  Rational q;
  auto bad = [&]() { return DomainError("complex line " + std::to_string(line) + ": bad rational '" + s + "'"); };
  if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos) throw bad();
  std::string t = s[0] == '+' ? s.substr(1) : s;
  if (q.set_str(t, 10) != 0) throw bad();
  if (q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

}  // namespace

void write_complex(std::ostream& os, const GradedComplex& c) {
  os << "complex\n";
  write_body(os, c);
  os << "end\n";
}

void write_complex(std::ostream& os, const SymplecticComplex& s) {
  os << "complex\n";
  write_body(os, s.complex());
  os << "pairing " << s.degree() << "\n";
  for (int k : s.complex().degrees()) {
    RMatrix p = s.pairing(k);
    if (p.empty() || p.is_zero()) continue;
    os << "P " << k << "\n";
    write_matrix(os, p);
  }
  os << "end\n";
}

SymplecticComplex read_complex(std::istream& is, bool* has_pairing) {
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    auto pos = raw.find('#');
    if (pos != std::string::npos) raw.erase(pos);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    std::string w;
    while (ls >> w) tok.push_back(w);
    if (!tok.empty()) lines.push_back({lineno, std::move(tok)});
  }
  auto fail = [](int line, const std::string& what) {
    throw DomainError("complex line " + std::to_string(line) + ": " + what);
  };
  auto to_int = [&](const std::string& s, int line) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(line, "expected an integer, got '" + s + "'");
    }
    return 0;
  };
  std::size_t i = 0;
  if (lines.empty() || lines[0].second != std::vector<std::string>{"complex"})
    fail(lines.empty() ? 0 : lines[0].first, "expected 'complex'");
  ++i;
  std::map<int, std::size_t> dims;
  std::map<int, RMatrix> d, p;
  std::optional<int> degree;
  auto dim = [&](int k) {
    auto it = dims.find(k);
    return it == dims.end() ? std::size_t(0) : it->second;
  };
  auto read_matrix = [&](std::size_t rows, std::size_t cols, int header) {
    RMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r, ++i) {
      if (i >= lines.size()) fail(header, "matrix is missing rows");
      const auto& [ln, tok] = lines[i];
      if (tok.size() != cols)
        fail(ln, "expected " + std::to_string(cols) + " entries, got " + std::to_string(tok.size()));
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_rational(tok[c], ln);
    }
    return m;
  };
  bool ended = false;
  while (i < lines.size()) {
    const auto [ln, tok] = lines[i++];
    const std::string& key = tok[0];
    if (key == "end") {
      ended = true;
      break;
    }
    if (key == "dim") {
      if (tok.size() != 3) fail(ln, "expected 'dim K N'");
      int k = to_int(tok[1], ln), n = to_int(tok[2], ln);
      if (n < 0) fail(ln, "negative dimension");
      if (dims.count(k)) fail(ln, "dimension of degree " + tok[1] + " given twice");
      dims[k] = static_cast<std::size_t>(n);
    } else if (key == "d") {
      if (tok.size() != 2) fail(ln, "expected 'd K'");
      int k = to_int(tok[1], ln);
      d[k] = read_matrix(dim(k + 1), dim(k), ln);
    } else if (key == "pairing") {
      if (tok.size() != 2) fail(ln, "expected 'pairing N'");
      degree = to_int(tok[1], ln);
    } else if (key == "P") {
      if (!degree) fail(ln, "'P' before 'pairing'");
      if (tok.size() != 2) fail(ln, "expected 'P K'");
      int k = to_int(tok[1], ln);
      p[k] = read_matrix(dim(k), dim(*degree - k), ln);
    } else {
      fail(ln, "unknown keyword '" + key + "'");
    }
  }
  if (!ended) fail(lineno, "missing 'end'");
  if (has_pairing) *has_pairing = degree.has_value();
  return SymplecticComplex(GradedComplex(std::move(dims), std::move(d)), degree.value_or(0), std::move(p));
}

SymplecticComplex load_complex(const std::string& path, bool* has_pairing) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open complex file '" + path + "'");
  return read_complex(in, has_pairing);
}

}  // namespace gq
