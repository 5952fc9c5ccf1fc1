#include "gq/sigma_structures.hpp"

#include <set>

namespace gq {

namespace {

int par(int w) { return w & 1; }

// Sign (-1)^{(a-n)(b-n)} with a, b degrees.
int shifted_sign(int a, int b, int n) { return (par(a - n) & par(b - n)) ? -1 : 1; }

}  // namespace

DarbouxChart::DarbouxChart(int n, std::vector<DarbouxPair> pairs,
                           std::vector<std::pair<std::string, std::string>> de_rham)
    : n_(n), pairs_(std::move(pairs)) {
  if (n < 0) throw DomainError("symplectic degree must be non-negative");
  std::vector<GVar> vars;
  for (const auto& pr : pairs_) {
    for (const GVar* v : {&pr.q, &pr.p})
      if (v->weight < 0 || v->weight > n)
        throw DomainError("coordinate '" + v->name + "' has weight " +
                          std::to_string(v->weight) + " outside [0, " + std::to_string(n) +
                          "]: a degree-" + std::to_string(n) +
                          " symplectic chart has degree at most " + std::to_string(n));
    if (pr.q.weight + pr.p.weight != n)
      throw DomainError("conjugate pair (" + pr.q.name + ", " + pr.p.name +
                        ") must have weights summing to " + std::to_string(n));
    if (pr.coefficient == 0) throw DomainError("Darboux pair coefficient must be nonzero");
  }
  for (const auto& pr : pairs_) vars.push_back(pr.q);
  for (const auto& pr : pairs_) vars.push_back(pr.p);
  std::vector<std::pair<std::size_t, std::size_t>> dr;
  if (!de_rham.empty()) {
    auto tmp = Chart::make(vars);
    for (const auto& [x, xi] : de_rham) dr.emplace_back(tmp->require(x), tmp->require(xi));
  }
  chart_ = Chart::make(std::move(vars), std::move(dr));
}

DarbouxChart DarbouxChart::cotangent1(int m) {
  std::vector<DarbouxPair> pairs;
  for (int a = 1; a <= m; ++a)
    pairs.push_back({{"x" + std::to_string(a), 0}, {"p" + std::to_string(a), 1}, 1});
  return DarbouxChart(1, std::move(pairs));
}

DarbouxChart DarbouxChart::standard_courant(int m) {
  std::vector<DarbouxPair> pairs;
  std::vector<std::pair<std::string, std::string>> dr;
  for (int a = 1; a <= m; ++a)
    pairs.push_back({{"x" + std::to_string(a), 0}, {"p" + std::to_string(a), 2}, 1});
  for (int a = 1; a <= m; ++a) {
    pairs.push_back({{"theta" + std::to_string(a), 1}, {"chi" + std::to_string(a), 1}, 1});
    dr.emplace_back("x" + std::to_string(a), "theta" + std::to_string(a));
  }
  return DarbouxChart(2, std::move(pairs), std::move(dr));
}

std::size_t DarbouxChart::conjugate(std::size_t var) const {
  const std::size_t r = pairs_.size();
  if (var >= 2 * r) throw DomainError("coordinate index out of range");
  return var < r ? var + r : var - r;
}

Rational DarbouxChart::basic_bracket(std::size_t a, std::size_t b) const {
  const std::size_t r = pairs_.size();
  if (conjugate(a) != b) return 0;
  if (a >= r) return pairs_[a - r].coefficient;  // {p, q}
  // {q, p} = -(-1)^{(|q|-n)(|p|-n)} {p, q}
  const auto& pr = pairs_[a];
  Rational c = pr.coefficient;
  return shifted_sign(pr.q.weight, pr.p.weight, n_) > 0 ? Rational(-c) : c;
}

namespace {

// Components {f, z} of the Hamiltonian vector field of a parity-homogeneous f.
std::vector<GPoly> hamiltonian_components(const DarbouxChart& dc, const GPoly& f, int f_par) {
  const ChartPtr& chart = dc.chart();
  std::vector<GPoly> comps;
  for (std::size_t z = 0; z < chart->size(); ++z) {
    const std::size_t w = dc.conjugate(z);
    // {f, z} = -(-1)^{(|f|-n)(|z|-n)} {z, f},  {z, f} = {z, w} d_w f
    Rational coeff = -dc.basic_bracket(z, w);
    if (shifted_sign(f_par, chart->var(z).weight, dc.n()) < 0) coeff = -coeff;
    comps.push_back(left_derivative(f, w) * coeff);
  }
  return comps;
}

}  // namespace

GPoly poisson_bracket(const DarbouxChart& dc, const GPoly& f, const GPoly& g) {
  const ChartPtr& chart = dc.chart();
  GPoly out(chart);
  if (f.is_zero() || g.is_zero()) return out;
  if (!same_universe(f.chart(), chart) || !same_universe(g.chart(), chart))
    throw DomainError("bracket arguments must live on the Darboux chart");
  auto [fe, fo] = f.by_parity();
  for (int fp = 0; fp < 2; ++fp) {
    const GPoly& part = fp ? fo : fe;
    if (part.is_zero()) continue;
    auto comps = hamiltonian_components(dc, part, fp);
    for (std::size_t z = 0; z < chart->size(); ++z) {
      if (comps[z].is_zero() || !g.depends_on(z)) continue;
      out += multiply(comps[z], left_derivative(g, z));
    }
  }
  return out;
}

Derivation hamiltonian_to_q(const DarbouxChart& dc, const GPoly& theta) {
  const ChartPtr& chart = dc.chart();
  if (!theta.is_zero() && !same_universe(theta.chart(), chart))
    throw DomainError("Hamiltonian must live on the Darboux chart");
  if (!theta.is_homogeneous_of(dc.n() + 1))
    throw PreconditionError("Hamiltonian must have weight n+1 = " + std::to_string(dc.n() + 1));
  if (theta.is_zero()) return Derivation(chart, 1);
  return Derivation(chart, 1, hamiltonian_components(dc, theta, par(dc.n() + 1)));
}

bool is_symplectic(const DarbouxChart& dc, const Derivation& q) {
  const ChartPtr& chart = dc.chart();
  for (std::size_t a = 0; a < chart->size(); ++a) {
    for (std::size_t b = 0; b < chart->size(); ++b) {
      GPoly lhs = poisson_bracket(dc, q.component(a), GPoly::variable(chart, b));
      GPoly rhs = poisson_bracket(dc, GPoly::variable(chart, a), q.component(b));
      if (par(chart->var(a).weight - dc.n())) rhs = -rhs;
      if (!(lhs + rhs).is_zero()) return false;
    }
  }
  return true;
}

GPoly q_to_hamiltonian(const DarbouxChart& dc, const Derivation& q) {
  const ChartPtr& chart = dc.chart();
  if (dc.n() < 1) throw PreconditionError("Hamiltonians exist only for n >= 1");
  if (q.is_zero()) return GPoly(chart);
  if (q.degree() != 1) throw PreconditionError("Q must have degree 1");
  if (!same_universe(q.chart(), chart)) throw DomainError("Q must live on the Darboux chart");
  if (!is_symplectic(dc, q)) throw StructureError("Q does not preserve the symplectic form");
  // Q(z) = {Theta, z} = -(-1)^{|z|-n} {z, w} d_w Theta with w = conj(z), so
  // every partial derivative is known; Euler's relation then recovers Theta.
  const int n = dc.n();
  GPoly theta(chart);
  for (std::size_t z = 0; z < chart->size(); ++z) {
    const std::size_t w = dc.conjugate(z);
    const int wt = chart->var(w).weight;
    if (wt == 0) continue;
    Rational coeff = -dc.basic_bracket(z, w);
    if (par(chart->var(z).weight - n)) coeff = -coeff;
    GPoly dw = q.component(z) * (Rational(1) / coeff);
    theta += multiply(GPoly::variable(chart, w), dw) * Rational(wt);
  }
  theta *= Rational(1, n + 1);
  if (!(hamiltonian_to_q(dc, theta) == q))
    throw StructureError("Q is not Hamiltonian on this chart");
  return theta;
}

GPoly master_equation(const DarbouxChart& dc, const GPoly& theta) {
  return poisson_bracket(dc, theta, theta);
}

GPoly derived_bracket(const DarbouxChart& dc, const GPoly& theta, const GPoly& e1,
                      const GPoly& e2) {
  if (!e1.weight() || !e2.weight())
    throw PreconditionError("derived bracket arguments must be weight-homogeneous");
  return poisson_bracket(dc, poisson_bracket(dc, theta, e1), e2);
}

bool lambda_check(const DarbouxChart& dc, const Derivation& q,
                  const std::vector<std::string>& constraints) {
  std::vector<GPoly> polys;
  for (const auto& name : constraints) {
    auto idx = dc.chart()->index_of(name);
    if (!idx) throw UnsupportedInput("constraint '" + name + "' is not a Darboux coordinate");
    polys.push_back(GPoly::variable(dc.chart(), *idx));
  }
  return lambda_check(dc, q, polys);
}

bool lambda_check(const DarbouxChart& dc, const Derivation& q,
                  const std::vector<GPoly>& constraints) {
  const ChartPtr& chart = dc.chart();
  std::set<std::size_t> constrained;
  for (const auto& c : constraints) {
    if (c.term_count() != 1 || !same_universe(c.chart(), chart))
      throw UnsupportedInput("constraint " + c.to_string() + " is not a coordinate");
    const auto& [e, coeff] = *c.terms().begin();
    std::size_t idx = chart->size(), count = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) {
        idx = i;
        count += e[i];
      }
    if (count != 1) throw UnsupportedInput("constraint " + c.to_string() + " is not a coordinate");
    constrained.insert(idx);
  }
  // Lagrangian: exactly one coordinate of each conjugate pair.
  for (std::size_t i = 0; i < dc.pair_count(); ++i) {
    const bool q_in = constrained.count(dc.q_index(i)) != 0;
    const bool p_in = constrained.count(dc.p_index(i)) != 0;
    if (q_in == p_in) return false;
  }
  // Q-invariance: Q(c) vanishes once every constrained coordinate is zero.
  std::vector<GPoly> restrict_images;
  for (std::size_t v = 0; v < chart->size(); ++v)
    restrict_images.push_back(constrained.count(v) ? GPoly(chart) : GPoly::variable(chart, v));
  for (auto c : constrained)
    if (!substitute(q.component(c), restrict_images).is_zero()) return false;
  return true;
}

GPoly poisson_hamiltonian(const DarbouxChart& dc, const std::vector<std::vector<GPoly>>& pi) {
  const ChartPtr& chart = dc.chart();
  const std::size_t m = pi.size();
  if (dc.n() != 1 || dc.pair_count() != m)
    throw DomainError("bivector size does not match the T*[1] chart");
  GPoly theta(chart);
  for (std::size_t a = 0; a < m; ++a) {
    if (pi[a].size() != m) throw DomainError("bivector must be square");
    for (std::size_t b = 0; b < m; ++b) {
      if (!(pi[a][b] + pi[b][a]).is_zero()) throw DomainError("bivector must be antisymmetric");
      if (pi[a][b].is_zero()) continue;
      if (!pi[a][b].is_homogeneous_of(0)) throw DomainError("bivector entries must have weight 0");
      GPoly pp = multiply(GPoly::variable(chart, dc.p_index(b)), GPoly::variable(chart, dc.p_index(a)));
      theta += multiply(pi[a][b], pp) * Rational(1, 2);
    }
  }
  return theta;
}

GPoly courant_hamiltonian(const DarbouxChart& dc, const GPoly& twist) {
  const ChartPtr& chart = dc.chart();
  if (dc.n() != 2 || dc.pair_count() % 2 != 0) throw DomainError("not a standard Courant chart");
  const std::size_t m = dc.pair_count() / 2;
  GPoly theta(chart);
  for (std::size_t a = 0; a < m; ++a)
    theta += multiply(GPoly::variable(chart, dc.q_index(m + a)),
                      GPoly::variable(chart, dc.p_index(a)));
  if (!twist.is_zero()) {
    if (!twist.is_homogeneous_of(3)) throw DomainError("twist must be a 3-form");
    theta += twist;
  }
  return theta;
}

void AlgebroidData::validate() const {
  if (!chart) throw DomainError("algebroid has no chart");
  for (auto b : base)
    if (b >= chart->size() || chart->var(b).weight != 0)
      throw DomainError("base coordinates must have weight 0");
  for (auto f : fiber)
    if (f >= chart->size() || chart->var(f).weight != 1)
      throw DomainError("fibre coordinates must have weight 1");
  const std::size_t m = base.size(), r = fiber.size();
  if (anchor.size() != m) throw DomainError("anchor has wrong number of rows");
  for (const auto& row : anchor) {
    if (row.size() != r) throw DomainError("anchor has wrong number of columns");
    for (const auto& e : row)
      if (!e.is_homogeneous_of(0)) throw DomainError("anchor entries must have weight 0");
  }
  if (structure.size() != r) throw DomainError("structure functions have wrong shape");
  for (std::size_t k = 0; k < r; ++k) {
    if (structure[k].size() != r) throw DomainError("structure functions have wrong shape");
    for (std::size_t i = 0; i < r; ++i) {
      if (structure[k][i].size() != r) throw DomainError("structure functions have wrong shape");
      for (std::size_t j = 0; j < r; ++j) {
        if (!structure[k][i][j].is_homogeneous_of(0))
          throw DomainError("structure functions must have weight 0");
        if (!(structure[k][i][j] + structure[k][j][i]).is_zero())
          throw DomainError("structure functions must be antisymmetric in the lower indices");
      }
    }
  }
}

ChartPtr algebroid_chart(int base_dim, int rank) {
  std::vector<GVar> vars;
  for (int a = 1; a <= base_dim; ++a) vars.push_back({"x" + std::to_string(a), 0});
  for (int i = 1; i <= rank; ++i) vars.push_back({"xi" + std::to_string(i), 1});
  std::vector<std::pair<std::size_t, std::size_t>> dr;
  if (base_dim == rank)
    for (int a = 0; a < base_dim; ++a) dr.emplace_back(a, base_dim + a);
  return Chart::make(std::move(vars), std::move(dr));
}

AlgebroidData lie_algebra_algebroid(const std::vector<std::vector<std::vector<Rational>>>& c) {
  const std::size_t r = c.size();
  AlgebroidData a;
  a.chart = algebroid_chart(0, static_cast<int>(r));
  for (std::size_t i = 0; i < r; ++i) a.fiber.push_back(i);
  a.structure.assign(r, std::vector<std::vector<GPoly>>(r, std::vector<GPoly>(r, GPoly(a.chart))));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        a.structure[k][i][j] = GPoly::constant(a.chart, c.at(k).at(i).at(j));
  a.validate();
  return a;
}

Derivation algebroid_to_q(const AlgebroidData& a) {
  a.validate();
  Derivation q(a.chart, 1);
  const std::size_t m = a.base.size(), r = a.fiber.size();
  for (std::size_t b = 0; b < m; ++b) {
    GPoly comp(a.chart);
    for (std::size_t i = 0; i < r; ++i)
      comp += multiply(GPoly::variable(a.chart, a.fiber[i]), a.anchor[b][i]);
    q.set_component(a.base[b], comp);
  }
  for (std::size_t k = 0; k < r; ++k) {
    GPoly comp(a.chart);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (a.structure[k][i][j].is_zero()) continue;
        GPoly xx = multiply(GPoly::variable(a.chart, a.fiber[i]),
                            GPoly::variable(a.chart, a.fiber[j]));
        comp += multiply(a.structure[k][i][j], xx) * Rational(-1, 2);
      }
    q.set_component(a.fiber[k], comp);
  }
  return q;
}

AlgebroidData q_to_algebroid(const Derivation& q) {
  const ChartPtr& chart = q.chart();
  if (q.degree() != 1) throw PreconditionError("Q must have degree 1");
  AlgebroidData a;
  a.chart = chart;
  for (std::size_t v = 0; v < chart->size(); ++v) {
    const int w = chart->var(v).weight;
    if (w == 0)
      a.base.push_back(v);
    else if (w == 1)
      a.fiber.push_back(v);
    else
      throw PreconditionError("a Lie algebroid chart has weights in {0, 1} only");
  }
  const std::size_t m = a.base.size(), r = a.fiber.size();
  a.anchor.assign(m, std::vector<GPoly>(r, GPoly(chart)));
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i = 0; i < r; ++i)
      a.anchor[b][i] = left_derivative(q.component(a.base[b]), a.fiber[i]);
  a.structure.assign(r, std::vector<std::vector<GPoly>>(r, std::vector<GPoly>(r, GPoly(chart))));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        a.structure[k][i][j] =
            -left_derivative(left_derivative(q.component(a.fiber[k]), a.fiber[i]), a.fiber[j]);
  a.validate();
  return a;
}

}  // namespace gq
