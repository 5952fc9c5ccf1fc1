#include "gq/graded_algebra.hpp"

#include <set>
#include <sstream>

namespace gq {

ChartPtr Chart::make(std::vector<GVar> vars) { return make(std::move(vars), {}); }

ChartPtr Chart::make(std::vector<GVar> vars,
                     std::vector<std::pair<std::size_t, std::size_t>> de_rham) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.weight < 0) throw DomainError("negative weight for variable '" + v.name + "'");
    if (v.name.empty()) throw DomainError("empty variable name");
    if (!seen.insert(v.name).second)
      throw DomainError("duplicate variable name '" + v.name + "'");
  }
  for (auto [x, xi] : de_rham) {
    if (x >= vars.size() || xi >= vars.size())
      throw DomainError("de Rham pairing index out of range");
    if (vars[x].weight != 0 || vars[xi].weight != 1)
      throw DomainError("de Rham pairing must send a weight-0 variable to a weight-1 one");
  }
  auto chart = std::shared_ptr<Chart>(new Chart(std::move(vars)));
  chart->de_rham_ = std::move(de_rham);
  return chart;
}

ChartPtr Chart::tangent_shifted(int m, std::vector<GVar> extra) {
  std::vector<GVar> vars;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int a = 1; a <= m; ++a) vars.push_back({"x" + std::to_string(a), 0});
  for (int a = 1; a <= m; ++a) vars.push_back({"xi" + std::to_string(a), 1});
  for (int a = 0; a < m; ++a) pairs.emplace_back(a, m + a);
  for (auto& e : extra) vars.push_back(std::move(e));
  return make(std::move(vars), std::move(pairs));
}

ChartPtr Chart::point() { return make({}); }

std::optional<std::size_t> Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Chart::require(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw DomainError("unknown variable '" + name + "'");
  return *i;
}

int Chart::degree() const {
  int d = 0;
  for (const auto& v : vars_) d = std::max(d, v.weight);
  return d;
}

bool Chart::same_as(const Chart& other) const {
  return this == &other || (vars_ == other.vars_ && de_rham_ == other.de_rham_);
}

bool same_universe(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

namespace {

// Product of two monomials. Returns false when an odd variable repeats.
// The sign counts pairs (odd i in a, odd j in b) with j < i, i.e. the
// transpositions needed to merge the two odd sequences.
bool monomial_product(const Chart& chart, const Exponents& a, const Exponents& b,
                      Exponents& out, int& sign) {
  const std::size_t n = chart.size();
  out.resize(n);
  int b_odd_seen = 0;
  int swaps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (chart.var(i).odd()) {
      if (a[i] && b[i]) return false;
      if (a[i]) swaps += b_odd_seen;
      if (b[i]) ++b_odd_seen;
      out[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    } else {
      out[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    }
  }
  sign = (swaps & 1) ? -1 : 1;
  return true;
}

int exps_weight(const Chart& chart, const Exponents& e) {
  int w = 0;
  for (std::size_t i = 0; i < e.size(); ++i) w += e[i] * chart.var(i).weight;
  return w;
}

int exps_parity(const Chart& chart, const Exponents& e) {
  int p = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (chart.var(i).odd()) p += e[i];
  return p & 1;
}

void require_same(const GPoly& p, const GPoly& q) {
  if (!same_universe(p.chart(), q.chart()))
    throw DomainError("polynomials live on different variable universes");
}

}  // namespace

GPoly GPoly::constant(ChartPtr chart, const Rational& c) {
  GPoly p(chart);
  p.add_term(Exponents(chart->size(), 0), c);
  return p;
}

GPoly GPoly::variable(ChartPtr chart, std::size_t index) {
  if (index >= chart->size()) throw DomainError("variable index out of range");
  Exponents e(chart->size(), 0);
  e[index] = 1;
  GPoly p(chart);
  p.add_term(e, 1);
  return p;
}

GPoly GPoly::variable(ChartPtr chart, const std::string& name) {
  auto i = chart->require(name);
  return variable(std::move(chart), i);
}

GPoly GPoly::monomial(ChartPtr chart, Exponents exps, const Rational& c) {
  if (exps.size() != chart->size()) throw DomainError("exponent vector has wrong length");
  GPoly p(chart);
  p.add_term(exps, c);
  return p;
}

void GPoly::add_term(const Exponents& exps, const Rational& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (chart_->var(i).odd() && exps[i] > 1) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> GPoly::weight() const {
  std::optional<int> w;
  for (const auto& [e, c] : terms_) {
    int tw = exps_weight(*chart_, e);
    if (w && *w != tw) return std::nullopt;
    w = tw;
  }
  return w ? w : std::optional<int>(0);
}

bool GPoly::is_homogeneous_of(int w) const {
  for (const auto& [e, c] : terms_)
    if (exps_weight(*chart_, e) != w) return false;
  return true;
}

std::optional<int> GPoly::parity() const {
  std::optional<int> p;
  for (const auto& [e, c] : terms_) {
    int tp = exps_parity(*chart_, e);
    if (p && *p != tp) return std::nullopt;
    p = tp;
  }
  return p ? p : std::optional<int>(0);
}

Rational GPoly::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& [e, c] = *terms_.begin();
  for (auto x : e)
    if (x) return 0;
  return c;
}

bool GPoly::depends_on(std::size_t var) const {
  for (const auto& [e, c] : terms_)
    if (e[var]) return true;
  return false;
}

GPoly GPoly::operator-() const {
  GPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

GPoly& GPoly::operator+=(const GPoly& q) {
  if (!chart_) {
    *this = q;
    return *this;
  }
  if (!q.chart_) return *this;
  require_same(*this, q);
  for (const auto& [e, c] : q.terms_) add_term(e, c);
  return *this;
}

GPoly& GPoly::operator-=(const GPoly& q) {
  if (!chart_) {
    *this = -q;
    return *this;
  }
  if (!q.chart_) return *this;
  require_same(*this, q);
  for (const auto& [e, c] : q.terms_) add_term(e, -c);
  return *this;
}

GPoly& GPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

GPoly operator*(const GPoly& p, const GPoly& q) { return multiply(p, q); }

bool GPoly::operator==(const GPoly& q) const {
  if (is_zero() && q.is_zero()) return true;
  if (!same_universe(chart_, q.chart_)) return false;
  return terms_ == q.terms_;
}

std::map<int, GPoly> GPoly::by_weight() const {
  std::map<int, GPoly> out;
  for (const auto& [e, c] : terms_) {
    auto [it, ins] = out.try_emplace(exps_weight(*chart_, e), GPoly(chart_));
    it->second.add_term(e, c);
  }
  return out;
}

std::pair<GPoly, GPoly> GPoly::by_parity() const {
  GPoly even(chart_), odd(chart_);
  for (const auto& [e, c] : terms_) (exps_parity(*chart_, e) ? odd : even).add_term(e, c);
  return {even, odd};
}

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

std::string GPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print higher-order terms last so constants lead.
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (has_var) vars << "*";
      vars << chart_->var(i).name;
      if (e[i] > 1) vars << "^" << e[i];
      has_var = true;
    }
    if (!has_var) {
      os << rational_to_string(mag);
    } else {
      if (mag != 1) os << rational_to_string(mag) << "*";
      os << vars.str();
    }
  }
  return os.str();
}

GPoly multiply(const GPoly& p, const GPoly& q) {
  if (!p.chart() && !q.chart()) return GPoly();
  if (!p.chart()) return GPoly(q.chart());
  if (!q.chart()) return GPoly(p.chart());
  require_same(p, q);
  const Chart& chart = *p.chart();
  GPoly r(p.chart());
  Exponents out;
  for (const auto& [ea, ca] : p.terms()) {
    for (const auto& [eb, cb] : q.terms()) {
      int sign = 1;
      if (!monomial_product(chart, ea, eb, out, sign)) continue;
      Rational c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(out, c);
    }
  }
  return r;
}

GPoly left_derivative(const GPoly& p, std::size_t var) {
  GPoly r(p.chart());
  if (!p.chart()) return r;
  const Chart& chart = *p.chart();
  if (var >= chart.size()) throw DomainError("variable index out of range");
  const bool odd = chart.var(var).odd();
  for (const auto& [e, c] : p.terms()) {
    if (!e[var]) continue;
    Exponents d = e;
    if (odd) {
      // Move the odd variable to the front past the odd ones before it.
      int before = 0;
      for (std::size_t i = 0; i < var; ++i)
        if (chart.var(i).odd() && e[i]) ++before;
      d[var] = 0;
      r.add_term(d, (before & 1) ? Rational(-c) : c);
    } else {
      d[var] = static_cast<std::uint16_t>(e[var] - 1);
      r.add_term(d, c * e[var]);
    }
  }
  return r;
}

std::optional<int> weight_of(const GPoly& p) { return p.weight(); }

GPoly scale_variables(const GPoly& p, std::span<const Rational> factors) {
  GPoly r(p.chart());
  for (const auto& [e, c] : p.terms()) {
    Rational f = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) f *= factors[i];
    r.add_term(e, f);
  }
  return r;
}

bool scaling_check(const GPoly& p, const Rational& lambda) {
  auto w = p.weight();
  if (!w) throw PreconditionError("scaling_check requires a weight-homogeneous polynomial");
  if (!p.chart()) return true;
  std::vector<Rational> factors;
  for (const auto& v : p.chart()->vars()) {
    Rational f = 1;
    for (int k = 0; k < v.weight; ++k) f *= lambda;
    factors.push_back(f);
  }
  Rational total = 1;
  for (int k = 0; k < *w; ++k) total *= lambda;
  return scale_variables(p, factors) == p * total;
}

GPoly substitute(const GPoly& p, std::span<const GPoly> images) {
  if (!p.chart()) return GPoly();
  const Chart& chart = *p.chart();
  if (images.size() != chart.size())
    throw DomainError("substitution needs one image per variable");
  ChartPtr target;
  for (const auto& im : images)
    if (im.chart()) {
      target = im.chart();
      break;
    }
  if (!target) target = p.chart();
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i].chart() || images[i].is_zero()) continue;
    if (!same_universe(images[i].chart(), target))
      throw DomainError("substitution images live on different charts");
    auto par = images[i].parity();
    if (!par || *par != (chart.var(i).odd() ? 1 : 0))
      throw DomainError("substitution image for '" + chart.var(i).name +
                        "' has the wrong parity");
  }
  GPoly r(target);
  for (const auto& [e, c] : p.terms()) {
    GPoly term = GPoly::constant(target, c);
    // Even factors first, then odd factors in canonical order; this matches
    // the monomial's normal form.
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!chart.var(i).odd())
        for (int k = 0; k < e[i]; ++k) term = multiply(term, images[i]);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (chart.var(i).odd() && e[i]) term = multiply(term, images[i]);
    r += term;
  }
  return r;
}

GPoly canonicalize(ChartPtr chart,
                   const std::vector<std::pair<Exponents, Rational>>& raw) {
  GPoly r(chart);
  for (const auto& [e, c] : raw) {
    if (e.size() != chart->size()) throw DomainError("exponent vector has wrong length");
    r.add_term(e, c);
  }
  return r;
}

}  // namespace gq
