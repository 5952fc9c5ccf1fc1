#include "gq/extensions.hpp"

#include "gq/sigma_structures.hpp"

#include <sstream>

namespace gq {

// ---------------------------------------------------------------------------
// Twists

ChartPtr TwistData::chart_for(int m, int n) {
  if (n < 1) throw DomainError("fibre degree n must be at least 1");
  return Chart::tangent_shifted(m, {{"t", n}});
}

TwistData::TwistData(ChartPtr chart, int n, GPoly eta)
    : chart_(std::move(chart)), n_(n), eta_(std::move(eta)) {
  const auto& t = chart_->var(fiber_index());
  if (t.weight != n) throw DomainError("fibre coordinate must have weight n");
  if (!eta_.chart()) eta_ = GPoly(chart_);
  if (!eta_.is_zero() && !same_universe(eta_.chart(), chart_))
    throw DomainError("eta must live on the twist chart");
  if (!eta_.is_homogeneous_of(n + 1))
    throw DomainError("eta must be an (n+1)-form (weight " + std::to_string(n + 1) + ")");
  if (eta_.depends_on(fiber_index())) throw DomainError("eta must not depend on the fibre");
}

Derivation twisted_q(const TwistData& t) {
  Derivation q = t.chart()->has_de_rham() ? de_rham_q(t.chart()) : Derivation(t.chart(), 1);
  q.set_component(t.fiber_index(), t.eta());
  return q;
}

TwistData gauge_change(const TwistData& t, const GPoly& alpha) {
  if (alpha.is_zero()) return t;
  if (!same_universe(alpha.chart(), t.chart())) throw DomainError("alpha must live on the twist chart");
  if (!alpha.is_homogeneous_of(t.n()) || alpha.depends_on(t.fiber_index()))
    throw DomainError("alpha must be a base-only n-form");
  return TwistData(t.chart(), t.n(), t.eta() + de_rham(alpha));
}

bool gauge_shift_intertwines(const TwistData& t, const GPoly& alpha) {
  TwistData shifted = gauge_change(t, alpha);
  Derivation q0 = twisted_q(t), q1 = twisted_q(shifted);
  const ChartPtr& chart = t.chart();
  std::vector<GPoly> phi;
  for (std::size_t v = 0; v < chart->size(); ++v) phi.push_back(GPoly::variable(chart, v));
  if (!alpha.is_zero()) phi[t.fiber_index()] += alpha;
  for (std::size_t v = 0; v < chart->size(); ++v)
    if (!(apply(q0, phi[v]) == substitute(q1.component(v), phi))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Quadratic Lie algebras

namespace {

std::vector<Rational> basis_bracket(const StructureConstants& c, std::size_t i, std::size_t j) {
  std::vector<Rational> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k][i][j];
  return out;
}

std::vector<Rational> vec_bracket(const StructureConstants& c, const std::vector<Rational>& u,
                                  const std::vector<Rational>& v) {
  const std::size_t d = c.size();
  std::vector<Rational> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (v[j] == 0) continue;
      Rational f = u[i] * v[j];
      for (std::size_t k = 0; k < d; ++k)
        if (c[k][i][j] != 0) out[k] += f * c[k][i][j];
    }
  }
  return out;
}

Rational vec_pair(const RMatrix& metric, const std::vector<Rational>& u, const std::vector<Rational>& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (u[i] != 0 && v[j] != 0) s += u[i] * metric(i, j) * v[j];
  return s;
}

std::vector<Rational> unit(std::size_t d, std::size_t i) {
  std::vector<Rational> e(d);
  e[i] = 1;
  return e;
}

void check_shape(const StructureConstants& c) {
  const std::size_t d = c.size();
  for (const auto& ck : c) {
    if (ck.size() != d) throw StructureError("structure constants have wrong shape");
    for (const auto& row : ck)
      if (row.size() != d) throw StructureError("structure constants have wrong shape");
  }
}

}  // namespace

std::optional<std::string> jacobi_violation(const StructureConstants& c) {
  check_shape(c);
  const std::size_t d = c.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        auto e_i = unit(d, i), e_j = unit(d, j), e_k = unit(d, k);
        auto a = vec_bracket(c, e_i, basis_bracket(c, j, k));
        auto b = vec_bracket(c, e_j, basis_bracket(c, k, i));
        auto cc = vec_bracket(c, e_k, basis_bracket(c, i, j));
        for (std::size_t l = 0; l < d; ++l)
          if (a[l] + b[l] + cc[l] != 0)
            return std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + std::to_string(k + 1);
      }
  return std::nullopt;
}

bool metric_is_invariant(const StructureConstants& c, const RMatrix& metric) {
  const std::size_t d = c.size();
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v)
      for (std::size_t w = 0; w < d; ++w) {
        Rational lhs = vec_pair(metric, basis_bracket(c, u, v), unit(d, w)) +
                       vec_pair(metric, unit(d, v), basis_bracket(c, u, w));
        if (lhs != 0) return false;
      }
  return true;
}

QuadraticLieAlgebra::QuadraticLieAlgebra(StructureConstants c, RMatrix metric)
    : c_(std::move(c)), metric_(std::move(metric)) {
  check_shape(c_);
  const std::size_t d = c_.size();
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (c_[k][i][j] != -c_[k][j][i]) throw StructureError("bracket is not antisymmetric");
  if (auto bad = jacobi_violation(c_)) throw StructureError("Jacobi identity fails on " + *bad);
  if (metric_.rows() != d || metric_.cols() != d) throw StructureError("metric has wrong size");
  if (!(metric_ == metric_.transpose())) throw StructureError("metric is not symmetric");
  if (rank(metric_) != d) throw StructureError("metric is degenerate");
  if (!metric_is_invariant(c_, metric_)) throw StructureError("metric is not invariant");
}

QuadraticLieAlgebra QuadraticLieAlgebra::so3() {
  StructureConstants c(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  auto eps = [](int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; };
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c[k][i][j] = eps(i, j, k);
  return QuadraticLieAlgebra(std::move(c), RMatrix::identity(3));
}

QuadraticLieAlgebra QuadraticLieAlgebra::sl2() {
  StructureConstants c(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  // h = 0, e = 1, f = 2
  c[1][0][1] = 2;
  c[1][1][0] = -2;
  c[2][0][2] = -2;
  c[2][2][0] = 2;
  c[0][1][2] = 1;
  c[0][2][1] = -1;
  RMatrix metric(3, 3);
  metric(0, 0) = 2;
  metric(1, 2) = 1;
  metric(2, 1) = 1;
  return QuadraticLieAlgebra(std::move(c), std::move(metric));
}

QuadraticLieAlgebra QuadraticLieAlgebra::abelian(std::size_t d) {
  StructureConstants c(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
  return QuadraticLieAlgebra(std::move(c), RMatrix::identity(d));
}

std::vector<Rational> QuadraticLieAlgebra::bracket(const std::vector<Rational>& u,
                                                   const std::vector<Rational>& v) const {
  return vec_bracket(c_, u, v);
}

Rational QuadraticLieAlgebra::pairing(const std::vector<Rational>& u,
                                      const std::vector<Rational>& v) const {
  return vec_pair(metric_, u, v);
}

Rational QuadraticLieAlgebra::cartan_coefficient(std::size_t i, std::size_t j, std::size_t k) const {
  Rational s = 0;
  for (std::size_t l = 0; l < dim(); ++l) s += metric_(i, l) * c_[l][j][k];
  return s;
}

Derivation chevalley_eilenberg_q(const StructureConstants& c) {
  return algebroid_to_q(lie_algebra_algebroid(c));
}

GPoly cartan_3form(const QuadraticLieAlgebra& g) {
  const std::size_t d = g.dim();
  ChartPtr chart = algebroid_chart(0, static_cast<int>(d));
  GPoly eta(chart);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Rational coeff = g.cartan_coefficient(i, j, k);
        if (coeff == 0) continue;
        GPoly m = GPoly::variable(chart, i) * GPoly::variable(chart, j) * GPoly::variable(chart, k);
        eta += m * (coeff / 6);
      }
  return eta;
}

// ---------------------------------------------------------------------------
// Graded Lie algebras

GradedLieAlgebra::GradedLieAlgebra(std::vector<std::string> names, std::vector<int> degrees)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
  if (names_.size() != degrees_.size()) throw DomainError("one degree per basis element");
  const std::size_t n = names_.size();
  bracket_.assign(n, std::vector<Vec>(n, Vec(n)));
  differential_.assign(n, Vec(n));
}

void GradedLieAlgebra::set_bracket(std::size_t a, std::size_t b, Vec value) {
  if (value.size() != dim()) throw DomainError("bracket value has wrong length");
  Vec mirrored = value;
  const bool sym = (degrees_[a] & 1) && (degrees_[b] & 1);
  for (auto& x : mirrored) x = sym ? x : Rational(-x);
  bracket_[a][b] = std::move(value);
  bracket_[b][a] = std::move(mirrored);
}

void GradedLieAlgebra::set_differential(std::size_t a, Vec value) {
  if (value.size() != dim()) throw DomainError("differential value has wrong length");
  differential_[a] = std::move(value);
}

GradedLieAlgebra::Vec GradedLieAlgebra::basis(std::size_t a) const { return unit(dim(), a); }

GradedLieAlgebra::Vec GradedLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec out(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < dim(); ++b) {
      if (y[b] == 0) continue;
      Rational f = x[a] * y[b];
      for (std::size_t c = 0; c < dim(); ++c)
        if (bracket_[a][b][c] != 0) out[c] += f * bracket_[a][b][c];
    }
  }
  return out;
}

GradedLieAlgebra::Vec GradedLieAlgebra::differential(const Vec& x) const {
  Vec out(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t c = 0; c < dim(); ++c) out[c] += x[a] * differential_[a][c];
  }
  return out;
}

namespace {

GradedLieAlgebra::Vec axpy(GradedLieAlgebra::Vec a, const GradedLieAlgebra::Vec& b, int s) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

bool vec_zero(const GradedLieAlgebra::Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

std::optional<std::string> GradedLieAlgebra::jacobi_violation() const {
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b)
      for (std::size_t c = 0; c < dim(); ++c) {
        auto ea = basis(a), eb = basis(b), ec = basis(c);
        auto lhs = bracket(ea, bracket(eb, ec));
        const int s = ((degrees_[a] & 1) && (degrees_[b] & 1)) ? -1 : 1;
        auto rhs = axpy(bracket(bracket(ea, eb), ec), bracket(eb, bracket(ea, ec)), s);
        if (!vec_zero(axpy(lhs, rhs, -1)))
          return names_[a] + " " + names_[b] + " " + names_[c];
      }
  return std::nullopt;
}

std::optional<std::string> GradedLieAlgebra::derivation_violation() const {
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b) {
      auto ea = basis(a), eb = basis(b);
      auto lhs = differential(bracket(ea, eb));
      const int s = (degrees_[a] & 1) ? -1 : 1;
      auto rhs = axpy(bracket(differential(ea), eb), bracket(ea, differential(eb)), s);
      if (!vec_zero(axpy(lhs, rhs, -1))) return names_[a] + " " + names_[b];
    }
  return std::nullopt;
}

bool GradedLieAlgebra::differential_squares_to_zero() const {
  for (std::size_t a = 0; a < dim(); ++a)
    if (!vec_zero(differential(differential(basis(a))))) return false;
  return true;
}

bool GradedLieAlgebra::degrees_consistent() const {
  for (std::size_t a = 0; a < dim(); ++a) {
    for (std::size_t b = 0; b < dim(); ++b)
      for (std::size_t c = 0; c < dim(); ++c)
        if (bracket_[a][b][c] != 0 && degrees_[c] != degrees_[a] + degrees_[b]) return false;
    for (std::size_t c = 0; c < dim(); ++c)
      if (differential_[a][c] != 0 && degrees_[c] != degrees_[a] + 1) return false;
  }
  return true;
}

GradedLieAlgebra central_extension(const QuadraticLieAlgebra& g) {
  const std::size_t d = g.dim();
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < d; ++i) {
    names.push_back("e" + std::to_string(i + 1));
    degrees.push_back(0);
  }
  for (std::size_t i = 0; i < d; ++i) {
    names.push_back("e" + std::to_string(i + 1) + "[1]");
    degrees.push_back(-1);
  }
  names.push_back("c");
  degrees.push_back(-2);
  GradedLieAlgebra L(std::move(names), std::move(degrees));
  const std::size_t n = 2 * d + 1;
  const auto& c = g.structure();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      GradedLieAlgebra::Vec even(n), shifted(n), central(n);
      for (std::size_t k = 0; k < d; ++k) {
        even[k] = c[k][i][j];
        shifted[d + k] = c[k][i][j];
      }
      central[2 * d] = g.metric()(i, j);
      if (i <= j) L.set_bracket(i, j, even);
      L.set_bracket(i, d + j, shifted);
      if (i <= j) L.set_bracket(d + i, d + j, central);
    }
  for (std::size_t i = 0; i < d; ++i) {
    GradedLieAlgebra::Vec image(n);
    image[i] = 1;
    L.set_differential(d + i, image);
  }
  return L;
}

CocycleResult affine_cocycle_check(const QuadraticLieAlgebra& g, int cutoff, const ModeWeight& weight) {
  if (cutoff < 1) throw PreconditionError("mode cutoff must be at least 1");
  const ModeWeight w = weight ? weight : ModeWeight([](int m) { return Rational(m); });
  const std::size_t d = g.dim();
  const auto& c = g.structure();
  const auto& metric = g.metric();
  // c([u z^a, v z^b], w z^k) with [u z^a, v z^b] = [u,v] z^{a+b}.
  auto term = [&](std::size_t i, int a, std::size_t j, int b, std::size_t k, int kk) {
    if (a + b + kk != 0) return Rational(0);
    Rational s = 0;
    for (std::size_t l = 0; l < d; ++l)
      if (c[l][i][j] != 0) s += c[l][i][j] * metric(l, k);
    return Rational(s * w(a + b));
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (int a = -cutoff; a <= cutoff; ++a)
          for (int b = -cutoff; b <= cutoff; ++b) {
            const int kk = -(a + b);
            if (kk < -cutoff || kk > cutoff) continue;
            Rational total = term(i, a, j, b, k, kk) + term(j, b, k, kk, i, a) + term(k, kk, i, a, j, b);
            if (total != 0) {
              std::ostringstream os;
              os << "e" << i + 1 << "z^" << a << " e" << j + 1 << "z^" << b << " e" << k + 1
                 << "z^" << kk << " -> " << rational_to_string(total);
              return {false, os.str()};
            }
          }
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Symmetry pairs

ChartPtr symmetry_chart(int m, int n) { return TwistData::chart_for(m, n); }

namespace {

std::size_t base_dim(const ChartPtr& chart) { return chart->de_rham_pairs().size(); }

Derivation vector_field(const ChartPtr& chart, const std::vector<GPoly>& v) {
  Derivation u(chart, 0);
  const auto& pairs = chart->de_rham_pairs();
  for (std::size_t a = 0; a < v.size(); ++a) u.set_component(pairs[a].first, v[a]);
  return u;
}

}  // namespace

void SymmetryPair::validate() const {
  if (!chart || n < 1) throw DomainError("symmetry pair needs a chart and n >= 1");
  const std::size_t m = base_dim(chart);
  const std::size_t t = chart->size() - 1;
  if (chart->var(t).weight != n) throw DomainError("chart fibre degree does not match n");
  if (v.size() != m) throw DomainError("vector field has wrong number of components");
  for (const auto& c : v)
    if (!c.is_homogeneous_of(0)) throw DomainError("vector field components must be functions");
  if (!alpha.is_homogeneous_of(n - 1) || alpha.depends_on(t))
    throw DomainError("alpha must be an (n-1)-form on the base");
}

Derivation interior(const ChartPtr& chart, const std::vector<GPoly>& v) {
  Derivation d(chart, -1);
  const auto& pairs = chart->de_rham_pairs();
  for (std::size_t a = 0; a < v.size(); ++a) d.set_component(pairs[a].second, v[a]);
  return d;
}

Derivation iota_encode(const SymmetryPair& s) {
  s.validate();
  Derivation d = interior(s.chart, s.v);
  d.set_component(s.chart->size() - 1, s.alpha);
  return d;
}

SymmetryPair iota_decode(const Derivation& d, int n) {
  if (d.degree() != -1) throw DomainError("iota must have degree -1");
  const ChartPtr& chart = d.chart();
  SymmetryPair s{chart, n, {}, GPoly(chart)};
  for (auto [x, xi] : chart->de_rham_pairs()) {
    if (!d.component(x).is_zero()) throw DomainError("iota must vanish on base coordinates");
    s.v.push_back(d.component(xi));
  }
  s.alpha = d.component(chart->size() - 1);
  s.validate();
  return s;
}

GPoly contraction(const SymmetryPair& s) { return apply(interior(s.chart, s.v), s.alpha); }

Derivation symmetry_q(const ChartPtr& chart) { return de_rham_q(chart); }

SymmetryPair symmetry_bracket(const SymmetryPair& s1, const SymmetryPair& s2) {
  s1.validate();
  s2.validate();
  if (!same_universe(s1.chart, s2.chart) || s1.n != s2.n)
    throw DomainError("symmetry pairs must share m and n");
  const ChartPtr& chart = s1.chart;
  Derivation u1 = vector_field(chart, s1.v), u2 = vector_field(chart, s2.v);
  SymmetryPair out{chart, s1.n, {}, GPoly(chart)};
  for (std::size_t a = 0; a < s1.v.size(); ++a)
    out.v.push_back(apply(u1, s2.v[a]) - apply(u2, s1.v[a]));
  Derivation i1 = interior(chart, s1.v), i2 = interior(chart, s2.v);
  GPoly lie = apply(i1, de_rham(s2.alpha)) + de_rham(apply(i1, s2.alpha));
  out.alpha = lie - apply(i2, de_rham(s1.alpha));
  return out;
}

bool operator==(const SymmetryPair& a, const SymmetryPair& b) {
  return a.n == b.n && a.v == b.v && a.alpha == b.alpha;
}

std::string to_string(const SymmetryPair& s) {
  std::ostringstream os;
  os << "(v: [";
  for (std::size_t a = 0; a < s.v.size(); ++a) os << (a ? ", " : "") << s.v[a].to_string();
  os << "], alpha: " << s.alpha.to_string() << ")";
  return os.str();
}

std::optional<std::pair<SymmetryPair, SymmetryPair>> find_nonskew_witness(int m, int n) {
  ChartPtr chart = symmetry_chart(m, n);
  const auto& pairs = chart->de_rham_pairs();
  // Candidate coefficient functions: 1 and x_b.
  std::vector<GPoly> funcs{GPoly::constant(chart, 1)};
  for (auto [x, xi] : pairs) funcs.push_back(GPoly::variable(chart, x));
  std::vector<std::vector<GPoly>> fields{std::vector<GPoly>(m, GPoly(chart))};
  for (int a = 0; a < m; ++a)
    for (const auto& f : funcs) {
      std::vector<GPoly> v(m, GPoly(chart));
      v[a] = f;
      fields.push_back(v);
    }
  // (n-1)-forms: f * xi^{a_1} ... xi^{a_{n-1}} with increasing indices.
  std::vector<GPoly> forms{GPoly(chart)};
  std::vector<std::vector<int>> index_sets{{}};
  for (int k = 0; k < n - 1; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& s : index_sets)
      for (int a = s.empty() ? 0 : s.back() + 1; a < m; ++a) {
        auto t = s;
        t.push_back(a);
        next.push_back(t);
      }
    index_sets = std::move(next);
  }
  for (const auto& idx : index_sets) {
    GPoly wedge = GPoly::constant(chart, 1);
    for (int a : idx) wedge = wedge * GPoly::variable(chart, pairs[a].second);
    for (const auto& f : funcs) forms.push_back(f * wedge);
  }
  std::vector<SymmetryPair> candidates;
  for (const auto& v : fields)
    for (const auto& a : forms) candidates.push_back({chart, n, v, a});
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i; j < candidates.size(); ++j) {
      auto ab = symmetry_bracket(candidates[i], candidates[j]);
      auto ba = symmetry_bracket(candidates[j], candidates[i]);
      if (!(ab.alpha + ba.alpha).is_zero()) return std::make_pair(candidates[i], candidates[j]);
    }
  return std::nullopt;
}

}  // namespace gq
