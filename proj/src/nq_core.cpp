#include "gq/nq_core.hpp"

#include <sstream>

namespace gq {

Derivation::Derivation(ChartPtr chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
  for (std::size_t i = 0; i < chart_->size(); ++i) components_.emplace_back(chart_);
}

Derivation::Derivation(ChartPtr chart, int degree, std::vector<GPoly> components)
    : chart_(std::move(chart)), degree_(degree) {
  if (components.size() != chart_->size())
    throw DomainError("derivation needs one component per coordinate");
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!components[i].chart()) components[i] = GPoly(chart_);
    check_component(i, components[i]);
  }
  components_ = std::move(components);
}

void Derivation::check_component(std::size_t var, const GPoly& p) const {
  if (!p.is_zero() && !same_universe(p.chart(), chart_))
    throw DomainError("derivation component lives on a different chart");
  const int want = chart_->var(var).weight + degree_;
  if (!p.is_homogeneous_of(want))
    throw DomainError("component for '" + chart_->var(var).name + "' must have weight " +
                      std::to_string(want) + ", got " + p.to_string());
}

void Derivation::set_component(std::size_t var, GPoly p) {
  if (!p.chart()) p = GPoly(chart_);
  check_component(var, p);
  components_.at(var) = std::move(p);
}

bool Derivation::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

bool Derivation::operator==(const Derivation& other) const {
  if (is_zero() && other.is_zero()) return true;
  return degree_ == other.degree_ && same_universe(chart_, other.chart_) &&
         components_ == other.components_;
}

Derivation Derivation::operator-() const {
  Derivation r = *this;
  for (auto& c : r.components_) c = -c;
  return r;
}

Derivation& Derivation::operator+=(const Derivation& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  if (degree_ != other.degree_) throw DomainError("adding derivations of different degree");
  if (!same_universe(chart_, other.chart_))
    throw DomainError("adding derivations on different charts");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& other) { return *this += -other; }

Derivation& Derivation::operator*=(const Rational& c) {
  for (auto& comp : components_) comp *= c;
  return *this;
}

std::string Derivation::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    if (!first) os << "; ";
    first = false;
    os << chart_->var(i).name << " -> " << components_[i].to_string();
  }
  return first ? "0" : os.str();
}

GPoly apply(const Derivation& d, const GPoly& p) {
  if (!p.chart() || p.is_zero()) return GPoly(d.chart());
  if (!same_universe(d.chart(), p.chart()))
    throw DomainError("derivation and polynomial live on different charts");
  GPoly r(d.chart());
  for (std::size_t v = 0; v < d.chart()->size(); ++v) {
    const GPoly& comp = d.component(v);
    if (comp.is_zero() || !p.depends_on(v)) continue;
    r += multiply(comp, left_derivative(p, v));
  }
  return r;
}

Derivation commutator(const Derivation& d1, const Derivation& d2) {
  if (!same_universe(d1.chart(), d2.chart()))
    throw DomainError("commutator of derivations on different charts");
  const int deg = d1.degree() + d2.degree();
  const bool anti = (d1.parity() & d2.parity()) != 0;
  std::vector<GPoly> comps;
  for (std::size_t v = 0; v < d1.chart()->size(); ++v) {
    GPoly a = apply(d1, d2.component(v));
    GPoly b = apply(d2, d1.component(v));
    comps.push_back(anti ? a + b : a - b);
  }
  return Derivation(d1.chart(), deg, std::move(comps));
}

Derivation q_square(const Derivation& q) {
  if (q.degree() != 1) throw PreconditionError("q_square requires a degree-1 derivation");
  Derivation sq = commutator(q, q);
  sq *= Rational(1, 2);
  return sq;
}

bool is_nq(const Derivation& q) { return q.degree() == 1 && q_square(q).is_zero(); }

int manifold_degree(const Chart& chart) { return chart.degree(); }

Derivation euler_field(const ChartPtr& chart) {
  Derivation e(chart, 0);
  for (std::size_t v = 0; v < chart->size(); ++v)
    e.set_component(v, GPoly::variable(chart, v) * Rational(chart->var(v).weight));
  return e;
}

Derivation de_rham_q(const ChartPtr& chart) {
  if (!chart->has_de_rham()) throw DomainError("chart has no de Rham pairing");
  Derivation q(chart, 1);
  for (auto [x, xi] : chart->de_rham_pairs()) q.set_component(x, GPoly::variable(chart, xi));
  return q;
}

GPoly de_rham(const GPoly& p) {
  if (!p.chart()) return p;
  return apply(de_rham_q(p.chart()), p);
}

}  // namespace gq
