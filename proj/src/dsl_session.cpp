#include "gq/dsl_session.hpp"

#include "gq/apath.hpp"
#include "gq/extensions.hpp"
#include "gq/gridmap.hpp"
#include "gq/lattice.hpp"
#include "gq/sigma_structures.hpp"
#include "gq/symplectic_complexes.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <variant>

namespace gq::dsl {

namespace {

struct HamValue {
  DarbouxChart sigma;
  GPoly theta;
};

struct AlgebraValue {
  StructureConstants c;
  std::optional<QuadraticLieAlgebra> quadratic;
};

using Value = std::variant<ChartPtr, Derivation, DarbouxChart, HamValue, AlgebroidData, AlgebraValue, TwistData,
                           SymmetryPair, APath, RelativeComplex, GridMap, NMapSpace>;

const char* kind_name(std::size_t index) {
  static const char* names[] = {"chart", "qfield", "sigma", "ham",  "algebroid", "algebra",
                                "twist", "pair",   "path",  "complex", "gridmap", "nmap"};
  return names[index];
}

struct Outcome {
  bool holds = true;
  bool degraded = false;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::pair<std::string, std::string>> witnesses;
  std::string explanation;
};

using Runner = std::function<Outcome()>;

class Env {
 public:
  explicit Env(const Options& o) : opt(o) {}

  Options opt;
  std::map<std::string, Value> bindings;

  void bind(const std::string& name, Pos pos, Value v) {
    if (name == "point") throw SemanticError(pos, "'point' is reserved");
    if (!bindings.emplace(name, std::move(v)).second) throw SemanticError(pos, "duplicate binding '" + name + "'");
  }

  const Value& lookup(const std::string& name, Pos pos) const {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw SemanticError(pos, "unknown identifier '" + name + "'");
    return it->second;
  }

  template <class T>
  const T& get(const std::string& name, Pos pos, const char* want) const {
    const Value& v = lookup(name, pos);
    if (const T* t = std::get_if<T>(&v)) return *t;
    throw SemanticError(pos, "'" + name + "' is a " + kind_name(v.index()) + ", expected a " + want);
  }
};

template <class F>
auto guard(Pos p, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SemanticError&) {
    throw;
  } catch (const SyntaxError&) {
    throw;
  } catch (const std::exception& e) {
    throw SemanticError(p, e.what());
  }
}

// ---------------------------------------------------------------------------
// Literals and expressions

Rational rational_of(const Atom& a) {
  if (a.kind != Atom::Kind::Number || a.text.find_first_of(".eE") != std::string::npos)
    throw SemanticError(a.pos, "expected an exact rational, found '" + a.text + "'");
  try {
    Rational r(a.text);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw SemanticError(a.pos, "bad rational '" + a.text + "'");
  }
}

double real_of(const Atom& a) {
  if (a.kind != Atom::Kind::Number) throw SemanticError(a.pos, "expected a number, found '" + a.text + "'");
  auto slash = a.text.find('/');
  if (slash != std::string::npos) return rational_of(a).get_d();
  return std::stod(a.text);
}

int int_of(const Atom& a) {
  if (a.kind != Atom::Kind::Number || a.text.find_first_of("./eE") != std::string::npos)
    throw SemanticError(a.pos, "expected an integer, found '" + a.text + "'");
  return std::stoi(a.text);
}

const std::string& ident_of(const Atom& a) {
  if (a.kind != Atom::Kind::Ident) throw SemanticError(a.pos, "expected a name, found '" + a.text + "'");
  return a.text;
}

GPoly eval(const Expr& e, const ChartPtr& c) {
  switch (e.kind) {
    case Expr::Kind::Num:
      return GPoly::constant(c, Rational(e.text));
    case Expr::Kind::Var: {
      auto idx = c->index_of(e.text);
      if (!idx) throw SemanticError(e.pos, "unknown identifier '" + e.text + "'");
      return GPoly::variable(c, *idx);
    }
    case Expr::Kind::Add:
      return eval(e.kids[0], c) + eval(e.kids[1], c);
    case Expr::Kind::Sub:
      return eval(e.kids[0], c) - eval(e.kids[1], c);
    case Expr::Kind::Mul:
      return eval(e.kids[0], c) * eval(e.kids[1], c);
    case Expr::Kind::Div: {
      Rational q(e.kids[1].text);
      if (q == 0) throw SemanticError(e.pos, "division by zero");
      return eval(e.kids[0], c) * Rational(1 / q);
    }
    case Expr::Kind::Neg:
      return -eval(e.kids[0], c);
    case Expr::Kind::Pow: {
      const int k = std::stoi(e.text);
      if (k > 64) throw SemanticError(e.pos, "exponent too large");
      GPoly base = eval(e.kids[0], c), out = GPoly::constant(c, 1);
      for (int i = 0; i < k; ++i) out = out * base;
      return out;
    }
    case Expr::Kind::D:
      if (!c->has_de_rham()) throw SemanticError(e.pos, "d(...) needs a chart with a de Rham pairing");
      return guard(e.pos, [&] { return de_rham(eval(e.kids[0], c)); });
  }
  return GPoly(c);
}

// ---------------------------------------------------------------------------
// Deterministic randomness: mt19937_64 with hand-rolled draws, so results do
// not depend on the standard library's distributions.

struct Rng {
  std::mt19937_64 g;
  Rng(std::uint64_t seed, std::uint64_t salt) : g(seed * 0x9E3779B97F4A7C15ULL ^ (salt + 0x632BE59BD9B4E019ULL)) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53); }
  int integer(int lo, int hi) { return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

Mat hat(double x, double y, double z) {
  Mat m(3, 3);
  m << 0, -z, y, z, 0, -x, -y, x, 0;
  return m;
}

StructureConstants zero_constants(std::size_t d) {
  return StructureConstants(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, 0)));
}

// A random 3-dimensional algebra: half of the draws conjugate a known Lie
// algebra by an integer matrix, the others are arbitrary antisymmetric
// constants (usually not Lie).
StructureConstants random_algebra(int d, std::uint64_t seed) {
  Rng rng(seed, 0xA1);
  StructureConstants c = zero_constants(d);
  auto set = [&](StructureConstants& s, int i, int j, int k, const Rational& v) {
    s[k][i][j] += v;
    s[k][j][i] -= v;
  };
  const int kind = d == 3 ? rng.integer(0, 7) : 7;
  if (kind >= 4) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = 0; k < d; ++k) set(c, i, j, k, rng.integer(-2, 2));
    return c;
  }
  StructureConstants base = zero_constants(3);
  switch (kind) {
    case 0:  // so(3)
      set(base, 0, 1, 2, 1);
      set(base, 1, 2, 0, 1);
      set(base, 2, 0, 1, 1);
      break;
    case 1:  // sl(2): [h,e] = 2e, [h,f] = -2f, [e,f] = h
      set(base, 0, 1, 1, 2);
      set(base, 0, 2, 2, -2);
      set(base, 1, 2, 0, 1);
      break;
    case 2:  // Heisenberg
      set(base, 0, 1, 2, 1);
      break;
    default: {  // [e3, e1] = e1, [e3, e2] = lambda e2
      set(base, 2, 0, 0, 1);
      set(base, 2, 1, 1, rng.integer(-3, 3));
    }
  }
  RMatrix p(3, 3), pinv(3, 3);
  do {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) p(i, j) = rng.integer(-2, 2);
  } while (rank(p) < 3);
  const RMatrix id = RMatrix::identity(3);
  for (std::size_t j = 0; j < 3; ++j) {
    const RMatrix col = *solve(p, id.column(j));
    for (std::size_t i = 0; i < 3; ++i) pinv(i, j) = col(i, 0);
  }
  // c'(x, y) = P^{-1} [P x, P y]
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Rational s = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int l = 0; l < 3; ++l) s += pinv(k, l) * base[l][a][b] * p(a, i) * p(b, j);
        c[k][i][j] = s;
      }
  return c;
}

GridMap random_gridmap(int nx, int ny, std::uint64_t seed, std::uint64_t salt) {
  Rng rng(seed, 0x6D00 + salt);
  Vec3 a, b, c;
  for (int k = 0; k < 3; ++k) {
    a[k] = rng.uniform(-1, 1);
    b[k] = rng.uniform(-1, 1);
    c[k] = rng.uniform(-0.5, 0.5);
  }
  return GridMap::sample(nx, ny, [=](double x, double y) {
    return quat_exp(a * std::sin(2 * M_PI * x) + b * std::sin(2 * M_PI * y) + c * std::cos(2 * M_PI * (x + y)));
  });
}

SU2Field3 random_field3(Rng& rng) {
  Vec3 a, b, c;
  for (int k = 0; k < 3; ++k) {
    a[k] = rng.uniform(-0.5, 0.5);
    b[k] = rng.uniform(-0.5, 0.5);
    c[k] = rng.uniform(-0.5, 0.5);
  }
  return [=](double x, double y, double z) {
    return quat_exp(a * std::sin(2 * M_PI * x) + b * std::sin(2 * M_PI * y) + c * std::sin(2 * M_PI * z));
  };
}

// ---------------------------------------------------------------------------
// Declarations

void declare_chart(Env& env, const ChartStmt& s) {
  ChartPtr chart;
  if (s.ctor) {
    if (s.ctor->name != "tangent" || s.ctor->args.size() != 1)
      throw SemanticError(s.ctor->pos, "unknown chart constructor '" + s.ctor->name + "'; expected tangent(m)");
    const int m = int_of(s.ctor->args[0]);
    chart = guard(s.pos, [&] { return Chart::tangent_shifted(m); });
  } else {
    std::vector<GVar> vars;
    std::set<std::string> seen;
    for (const auto& v : s.vars) {
      if (v.weight < 0) throw SemanticError(s.pos, "negative weight for '" + v.name + "'");
      if (v.name == "d") throw SemanticError(s.pos, "'d' is reserved for the de Rham operator");
      if (!seen.insert(v.name).second) throw SemanticError(s.pos, "duplicate coordinate '" + v.name + "'");
      vars.push_back({v.name, v.weight});
    }
    std::vector<std::pair<std::size_t, std::size_t>> dr;
    auto index = [&](const std::string& n) -> std::size_t {
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == n) return i;
      throw SemanticError(s.pos, "unknown identifier '" + n + "'");
    };
    for (const auto& [x, xi] : s.derham) dr.emplace_back(index(x), index(xi));
    chart = guard(s.pos, [&] { return Chart::make(std::move(vars), std::move(dr)); });
  }
  env.bind(s.name, s.pos, chart);
}

ChartPtr chart_of(const Env& env, const std::string& name, Pos pos) {
  const Value& v = env.lookup(name, pos);
  if (auto c = std::get_if<ChartPtr>(&v)) return *c;
  if (auto c = std::get_if<DarbouxChart>(&v)) return c->chart();
  if (auto c = std::get_if<TwistData>(&v)) return c->chart();
  throw SemanticError(pos, "'" + name + "' is a " + kind_name(v.index()) + ", expected a chart, sigma or twist");
}

void declare_qfield(Env& env, const QFieldStmt& s) {
  if (s.ctor) {
    const Call& c = *s.ctor;
    auto arg = [&](std::size_t n) {
      if (c.args.size() != n) throw SemanticError(c.pos, c.name + " takes " + std::to_string(n) + " argument(s)");
    };
    Derivation q;
    if (c.name == "derham") {
      arg(1);
      ChartPtr ch = chart_of(env, ident_of(c.args[0]), c.pos);
      q = guard(c.pos, [&] { return de_rham_q(ch); });
    } else if (c.name == "ce") {
      arg(1);
      const auto& g = env.get<AlgebraValue>(ident_of(c.args[0]), c.pos, "algebra");
      q = guard(c.pos, [&] { return chevalley_eilenberg_q(g.c); });
    } else if (c.name == "algebroid") {
      arg(1);
      const auto& a = env.get<AlgebroidData>(ident_of(c.args[0]), c.pos, "algebroid");
      q = guard(c.pos, [&] { return algebroid_to_q(a); });
    } else if (c.name == "twisted") {
      arg(1);
      const auto& t = env.get<TwistData>(ident_of(c.args[0]), c.pos, "twist");
      q = guard(c.pos, [&] { return twisted_q(t); });
    } else if (c.name == "ham") {
      arg(1);
      const auto& h = env.get<HamValue>(ident_of(c.args[0]), c.pos, "ham");
      q = guard(c.pos, [&] { return hamiltonian_to_q(h.sigma, h.theta); });
    } else if (c.name == "symmetry") {
      arg(2);
      const int m = int_of(c.args[0]), n = int_of(c.args[1]);
      q = guard(c.pos, [&] { return symmetry_q(symmetry_chart(m, n)); });
    } else {
      throw SemanticError(c.pos, "unknown qfield constructor '" + c.name + "'");
    }
    env.bind(s.name, s.pos, q);
    return;
  }
  ChartPtr chart = chart_of(env, s.chart, s.pos);
  std::vector<GPoly> comps(chart->size(), GPoly(chart));
  std::set<std::string> seen;
  for (const auto& [v, e] : s.images) {
    auto idx = chart->index_of(v);
    if (!idx) throw SemanticError(e.pos, "unknown identifier '" + v + "'");
    if (!seen.insert(v).second) throw SemanticError(e.pos, "coordinate '" + v + "' given twice");
    comps[*idx] = eval(e, chart);
    if (!comps[*idx].is_homogeneous_of(chart->var(*idx).weight + 1))
      throw SemanticError(e.pos, "weight mismatch: image of '" + v + "' must have weight " +
                                     std::to_string(chart->var(*idx).weight + 1));
  }
  env.bind(s.name, s.pos, guard(s.pos, [&] { return Derivation(chart, 1, comps); }));
}

void declare_sigma(Env& env, const SigmaStmt& s) {
  if (s.ctor) {
    const Call& c = *s.ctor;
    if (c.args.size() != 1) throw SemanticError(c.pos, c.name + " takes one argument");
    const int m = int_of(c.args[0]);
    if (c.name == "cotangent") {
      env.bind(s.name, s.pos, guard(c.pos, [&] { return DarbouxChart::cotangent1(m); }));
    } else if (c.name == "courant") {
      env.bind(s.name, s.pos, guard(c.pos, [&] { return DarbouxChart::standard_courant(m); }));
    } else {
      throw SemanticError(c.pos, "unknown sigma constructor '" + c.name + "'");
    }
    return;
  }
  std::vector<DarbouxPair> pairs;
  for (const auto& p : s.pairs) {
    for (const Weighted* w : {&p.q, &p.p})
      if (w->weight < 0) throw SemanticError(s.pos, "negative weight for '" + w->name + "'");
    pairs.push_back({{p.q.name, p.q.weight}, {p.p.name, p.p.weight}, 1});
  }
  env.bind(s.name, s.pos, guard(s.pos, [&] { return DarbouxChart(s.n, pairs, s.derham); }));
}

void declare_ham(Env& env, const HamStmt& s) {
  const DarbouxChart& y = env.get<DarbouxChart>(s.sigma, s.pos, "sigma");
  GPoly theta;
  if (s.courant) {
    GPoly twist = s.expr ? eval(*s.expr, y.chart()) : GPoly(y.chart());
    if (s.expr && !twist.is_homogeneous_of(3))
      throw SemanticError(s.expr->pos, "weight mismatch: a courant twist must have weight 3");
    theta = guard(s.pos, [&] { return courant_hamiltonian(y, twist); });
  } else if (s.expr) {
    theta = eval(*s.expr, y.chart());
    if (!theta.is_homogeneous_of(y.n() + 1))
      throw SemanticError(s.expr->pos, "weight mismatch: a hamiltonian on a degree-" + std::to_string(y.n()) +
                                           " sigma must have weight " + std::to_string(y.n() + 1));
  } else {
    if (y.n() != 1) throw SemanticError(s.pos, "bivector hamiltonians need a degree-1 sigma");
    const std::size_t m = y.pair_count();
    std::vector<std::vector<GPoly>> pi(m, std::vector<GPoly>(m, GPoly(y.chart())));
    auto pair_of = [&](const std::string& n) -> std::size_t {
      for (std::size_t i = 0; i < m; ++i)
        if (y.pairs()[i].q.name == n) return i;
      throw SemanticError(s.pos, "'" + n + "' is not a base coordinate of " + s.sigma);
    };
    for (const auto& b : s.bivector) {
      const std::size_t i = pair_of(b.a), j = pair_of(b.b);
      if (i == j) throw SemanticError(b.value.pos, "bivector entries need two different coordinates");
      GPoly v = eval(b.value, y.chart());
      pi[i][j] += v;
      pi[j][i] -= v;
    }
    theta = guard(s.pos, [&] { return poisson_hamiltonian(y, pi); });
  }
  env.bind(s.name, s.pos, HamValue{y, theta});
}

void declare_algebroid(Env& env, const AlgebroidStmt& s) {
  AlgebroidData a;
  a.chart = guard(s.pos, [&] { return algebroid_chart(s.base, s.rank); });
  const std::size_t m = s.base, r = s.rank;
  for (std::size_t i = 0; i < m; ++i) a.base.push_back(i);
  for (std::size_t i = 0; i < r; ++i) a.fiber.push_back(m + i);
  a.anchor.assign(m, std::vector<GPoly>(r, GPoly(a.chart)));
  a.structure.assign(r, std::vector<std::vector<GPoly>>(r, std::vector<GPoly>(r, GPoly(a.chart))));
  auto in = [&](const IndexedExpr& e, std::size_t k, std::size_t hi) {
    if (e.index[k] < 1 || static_cast<std::size_t>(e.index[k]) > hi)
      throw SemanticError(e.value.pos, "index " + std::to_string(e.index[k]) + " out of range 1.." + std::to_string(hi));
    return static_cast<std::size_t>(e.index[k] - 1);
  };
  for (const auto& e : s.anchor) a.anchor[in(e, 0, m)][in(e, 1, r)] += eval(e.value, a.chart);
  for (const auto& e : s.structure) {
    const std::size_t k = in(e, 0, r), i = in(e, 1, r), j = in(e, 2, r);
    if (i == j) throw SemanticError(e.value.pos, "c(k, i, i) must vanish");
    GPoly v = eval(e.value, a.chart);
    a.structure[k][i][j] += v;
    a.structure[k][j][i] -= v;
  }
  guard(s.pos, [&] {
    a.validate();
    return 0;
  });
  env.bind(s.name, s.pos, a);
}

void declare_algebra(Env& env, const AlgebraStmt& s) {
  AlgebraValue g;
  if (s.ctor) {
    const Call& c = *s.ctor;
    if (c.name == "so3" || c.name == "sl2") {
      if (!c.args.empty()) throw SemanticError(c.pos, c.name + " takes no arguments");
      g.quadratic = c.name == "so3" ? QuadraticLieAlgebra::so3() : QuadraticLieAlgebra::sl2();
    } else if (c.name == "abelian") {
      if (c.args.size() != 1) throw SemanticError(c.pos, "abelian takes one argument");
      const int d = int_of(c.args[0]);
      g.quadratic = guard(c.pos, [&] { return QuadraticLieAlgebra::abelian(d); });
    } else if (c.name == "random") {
      if (c.args.size() != 2) throw SemanticError(c.pos, "random takes (dimension, seed)");
      const int d = int_of(c.args[0]);
      if (d < 1 || d > 8) throw SemanticError(c.pos, "random algebras need dimension 1..8");
      const auto seed = static_cast<std::uint64_t>(int_of(c.args[1]));
      g.c = guard(c.pos, [&] { return random_algebra(d, seed); });
    } else {
      throw SemanticError(c.pos, "unknown algebra constructor '" + c.name + "'");
    }
    if (g.quadratic) g.c = g.quadratic->structure();
    env.bind(s.name, s.pos, g);
    return;
  }
  if (s.dim < 1) throw SemanticError(s.pos, "algebra dimension must be positive");
  const std::size_t d = s.dim;
  g.c = zero_constants(d);
  for (const auto& b : s.brackets) {
    if (b.i < 1 || b.j < 1 || static_cast<std::size_t>(b.i) > d || static_cast<std::size_t>(b.j) > d)
      throw SemanticError(s.pos, "bracket index out of range");
    if (b.i == b.j) throw SemanticError(s.pos, "[e_i, e_i] must vanish");
    if (b.value.size() != d) throw SemanticError(s.pos, "bracket values need " + std::to_string(d) + " coefficients");
    for (std::size_t k = 0; k < d; ++k) {
      const Rational v = rational_of(b.value[k]);
      g.c[k][b.i - 1][b.j - 1] += v;
      g.c[k][b.j - 1][b.i - 1] -= v;
    }
  }
  if (!s.metric.empty()) {
    if (s.metric.size() != d) throw SemanticError(s.pos, "metric needs " + std::to_string(d) + " rows");
    RMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (s.metric[i].size() != d) throw SemanticError(s.pos, "metric rows need " + std::to_string(d) + " entries");
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rational_of(s.metric[i][j]);
    }
    g.quadratic = guard(s.pos, [&] { return QuadraticLieAlgebra(g.c, m); });
  }
  env.bind(s.name, s.pos, g);
}

void declare_twist(Env& env, const TwistStmt& s) {
  ChartPtr chart = guard(s.pos, [&] { return TwistData::chart_for(s.base, s.n); });
  GPoly eta = eval(s.eta, chart);
  env.bind(s.name, s.pos, guard(s.pos, [&] { return TwistData(chart, s.n, eta); }));
}

void declare_pair(Env& env, const PairStmt& s) {
  ChartPtr chart = guard(s.pos, [&] { return symmetry_chart(s.base, s.n); });
  if (s.v.size() != static_cast<std::size_t>(s.base))
    throw SemanticError(s.pos, "arity mismatch: v needs " + std::to_string(s.base) + " components");
  SymmetryPair p;
  p.chart = chart;
  p.n = s.n;
  for (const auto& e : s.v) p.v.push_back(eval(e, chart));
  p.alpha = eval(s.alpha, chart);
  guard(s.pos, [&] {
    p.validate();
    return 0;
  });
  env.bind(s.name, s.pos, p);
}

void declare_path(Env& env, const PathStmt& s) {
  if (s.ctor) {
    const Call& c = *s.ctor;
    std::vector<double> x;
    for (const auto& a : c.args) x.push_back(real_of(a));
    if (c.name == "constant") {
      if (x.size() == 3) {
        env.bind(s.name, s.pos, APath::constant(hat(x[0], x[1], x[2])));
        return;
      }
      const auto k = static_cast<int>(std::lround(std::sqrt(double(x.size()))));
      if (k < 1 || static_cast<std::size_t>(k * k) != x.size())
        throw SemanticError(c.pos, "constant takes 3 so(3) coordinates or k*k matrix entries");
      Mat m(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = x[i * k + j];
      env.bind(s.name, s.pos, APath::constant(m));
    } else if (c.name == "random") {
      if (x.size() != 2) throw SemanticError(c.pos, "random takes (knots, salt)");
      const int knots = int_of(c.args[0]);
      if (knots < 2) throw SemanticError(c.pos, "random paths need at least two knots");
      Rng rng(env.opt.seed, 0x9A00 + static_cast<std::uint64_t>(int_of(c.args[1])));
      std::vector<double> t;
      std::vector<Mat> a;
      for (int j = 0; j < knots; ++j) {
        t.push_back(j + 1 == knots ? 1.0 : double(j) / (knots - 1));
        const double u = rng.uniform(-1, 1), v = rng.uniform(-1, 1), w = rng.uniform(-1, 1);
        a.push_back(hat(u, v, w));
      }
      env.bind(s.name, s.pos, APath(t, a));
    } else if (c.name == "orbit") {
      if (x.size() != 7) throw SemanticError(c.pos, "orbit takes (x, y, z, p1, p2, p3, knots)");
      const int knots = int_of(c.args[6]);
      if (knots < 2) throw SemanticError(c.pos, "orbit needs at least two knots");
      const Mat gen = hat(x[0], x[1], x[2]);
      const Vec p0 = Eigen::Vector3d(x[3], x[4], x[5]);
      std::vector<double> t;
      std::vector<Mat> a;
      std::vector<Vec> gamma;
      for (int j = 0; j < knots; ++j) {
        const double tj = j + 1 == knots ? 1.0 : double(j) / (knots - 1);
        t.push_back(tj);
        a.push_back(gen);
        gamma.push_back(Mat((tj * gen).exp()) * p0);
      }
      env.bind(s.name, s.pos, APath(t, a, gamma));
    } else {
      throw SemanticError(c.pos, "unknown path constructor '" + c.name + "'");
    }
    return;
  }
  if (s.dim < 1) throw SemanticError(s.pos, "path dimension must be positive");
  std::vector<double> t;
  std::vector<Mat> a;
  std::vector<Vec> gamma;
  for (const auto& smp : s.samples) {
    if (smp.a.size() != static_cast<std::size_t>(s.dim * s.dim))
      throw SemanticError(smp.t.pos, "sample needs " + std::to_string(s.dim * s.dim) + " matrix entries");
    t.push_back(real_of(smp.t));
    Mat m(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i)
      for (int j = 0; j < s.dim; ++j) m(i, j) = real_of(smp.a[i * s.dim + j]);
    a.push_back(m);
    if (!smp.base.empty()) {
      if (smp.base.size() != static_cast<std::size_t>(s.dim))
        throw SemanticError(smp.t.pos, "base point needs " + std::to_string(s.dim) + " coordinates");
      Vec g(s.dim);
      for (int i = 0; i < s.dim; ++i) g(i) = real_of(smp.base[i]);
      gamma.push_back(g);
    }
  }
  env.bind(s.name, s.pos, guard(s.pos, [&] { return APath(t, a, gamma); }));
}

GradedComplex total_of(const Env& env, const Atom& a) {
  const std::string& n = ident_of(a);
  if (n == "point") return point_complex();
  return env.get<RelativeComplex>(n, a.pos, "complex").total().complex();
}

RelativeComplex closed_plain(const GradedComplex& c) {
  return RelativeComplex::closed(SymplecticComplex(c, 0, {}));
}

void declare_complex(Env& env, const ObjectStmt& s) {
  const Call& c = s.ctor;
  auto arg = [&](std::size_t n, const char* usage) {
    if (c.args.size() != n) throw SemanticError(c.pos, std::string("usage: ") + usage);
  };
  auto algebra = [&](const Atom& a) -> const QuadraticLieAlgebra& {
    const auto& g = env.get<AlgebraValue>(ident_of(a), a.pos, "algebra");
    if (!g.quadratic) throw SemanticError(a.pos, "'" + a.text + "' has no invariant metric");
    return *g.quadratic;
  };
  auto build = [&]() -> RelativeComplex {
    if (c.name == "torus" || c.name == "cylinder" || c.name == "disk") {
      arg(3, "torus|cylinder|disk(m1, m2, algebra)");
      const Surface sf = c.name == "torus" ? Surface::Torus : c.name == "cylinder" ? Surface::Cylinder : Surface::Disk;
      const auto& g = algebra(c.args[2]);
      const int m1 = int_of(c.args[0]), m2 = int_of(c.args[1]);
      return guard(c.pos, [&] { return lattice_model(sf, m1, m2, g); });
    }
    if (c.name == "interval") {
      if (c.args.size() != 3 && c.args.size() != 4) throw SemanticError(c.pos, "usage: interval(m, complex, n[, both])");
      bool both = false;
      if (c.args.size() == 4) {
        if (ident_of(c.args[3]) != "both") throw SemanticError(c.args[3].pos, "expected 'both'");
        both = true;
      }
      const GradedComplex f = total_of(env, c.args[1]);
      const int m = int_of(c.args[0]), n = int_of(c.args[2]);
      return guard(c.pos, [&] { return interval_model(m, f, n, both); });
    }
    if (c.name == "interval_cup") {
      arg(2, "interval_cup(m, algebra)");
      const auto& g = algebra(c.args[1]);
      const int m = int_of(c.args[0]);
      return guard(c.pos, [&] { return interval_cup_model(m, g); });
    }
    if (c.name == "double") {
      arg(2, "double(complex, n)");
      const GradedComplex f = total_of(env, c.args[0]);
      const int n = int_of(c.args[1]);
      return guard(c.pos, [&] { return RelativeComplex::closed(double_complex(f, n)); });
    }
    if (c.name == "cube") {
      arg(2, "cube(n, segments)");
      const int n = int_of(c.args[0]), m = int_of(c.args[1]);
      return guard(c.pos, [&] { return closed_plain(relative_cube(n, m)); });
    }
    if (c.name == "tensor") {
      arg(2, "tensor(complex, complex)");
      const GradedComplex a = total_of(env, c.args[0]), b = total_of(env, c.args[1]);
      return guard(c.pos, [&] { return closed_plain(tensor(a, b)); });
    }
    if (c.name == "point") {
      arg(0, "point");
      return closed_plain(point_complex());
    }
    throw SemanticError(c.pos, "unknown complex constructor '" + c.name + "'");
  };
  env.bind(s.name, s.pos, build());
}

void declare_gridmap(Env& env, const ObjectStmt& s) {
  const Call& c = s.ctor;
  if (c.name == "random") {
    if (c.args.size() != 3) throw SemanticError(c.pos, "usage: random(nx, ny, salt)");
    const int nx = int_of(c.args[0]), ny = int_of(c.args[1]);
    const auto salt = static_cast<std::uint64_t>(int_of(c.args[2]));
    env.bind(s.name, s.pos, guard(c.pos, [&] { return random_gridmap(nx, ny, env.opt.seed, salt); }));
  } else if (c.name == "identity") {
    if (c.args.size() != 2) throw SemanticError(c.pos, "usage: identity(nx, ny)");
    const int nx = int_of(c.args[0]), ny = int_of(c.args[1]);
    env.bind(s.name, s.pos, guard(c.pos, [&] { return GridMap(nx, ny); }));
  } else {
    throw SemanticError(c.pos, "unknown gridmap constructor '" + c.name + "'");
  }
}

void declare_nmap(Env& env, const NMapStmt& s) {
  const DarbouxChart& y = env.get<DarbouxChart>(s.sigma, s.pos, "sigma");
  env.bind(s.name, s.pos, guard(s.pos, [&] { return nmap_space(y, s.n); }));
}

void declare_load(Env& env, const LoadStmt& s) {
  std::string file = s.file;
  if (!file.empty() && file[0] != '/' && !env.opt.base_dir.empty()) file = env.opt.base_dir + "/" + file;
  if (s.kind == "complex") {
    env.bind(s.name, s.pos, guard(s.pos, [&] { return RelativeComplex::closed(load_complex(file)); }));
  } else if (s.kind == "path") {
    env.bind(s.name, s.pos, guard(s.pos, [&] { return APath::load(file); }));
  } else {
    env.bind(s.name, s.pos, guard(s.pos, [&] { return GridMap::load(file); }));
  }
}

// ---------------------------------------------------------------------------
// Checks

void arity(const CheckStmt& s, std::size_t lo, std::size_t hi) {
  if (s.args.size() < lo || s.args.size() > hi) {
    for (const auto& info : check_table())
      if (info.name == s.check) throw SemanticError(s.pos, "usage: check " + info.usage);
    throw SemanticError(s.pos, "wrong number of arguments");
  }
}

void no_expected(const CheckStmt& s) {
  if (s.expected) throw SemanticError(s.expected->pos, "check " + s.check + " takes no '= expr'");
}

template <class T>
const T& arg(const Env& env, const CheckStmt& s, std::size_t i, const char* want) {
  return env.get<T>(ident_of(s.args[i]), s.args[i].pos, want);
}

// Any binding that carries a Q.
Derivation q_of(const Env& env, const Atom& a) {
  const Value& v = env.lookup(ident_of(a), a.pos);
  return guard(a.pos, [&]() -> Derivation {
    if (auto q = std::get_if<Derivation>(&v)) return *q;
    if (auto t = std::get_if<TwistData>(&v)) return twisted_q(*t);
    if (auto al = std::get_if<AlgebroidData>(&v)) return algebroid_to_q(*al);
    if (auto g = std::get_if<AlgebraValue>(&v)) return chevalley_eilenberg_q(g->c);
    if (auto h = std::get_if<HamValue>(&v)) return hamiltonian_to_q(h->sigma, h->theta);
    throw SemanticError(a.pos, "'" + a.text + "' is a " + kind_name(v.index()) + " and has no Q");
  });
}

const QuadraticLieAlgebra& quadratic(const Env& env, const CheckStmt& s, std::size_t i) {
  const auto& g = arg<AlgebraValue>(env, s, i, "algebra");
  if (!g.quadratic) throw SemanticError(s.args[i].pos, "'" + s.args[i].text + "' has no invariant metric");
  return *g.quadratic;
}

std::string dims_text(const std::map<int, std::size_t>& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, n] : d) {
    if (n == 0) continue;
    os << (first ? "" : " ") << k << ":" << n;
    first = false;
  }
  return first ? "0" : os.str();
}

SymmetryPair add(const SymmetryPair& a, const SymmetryPair& b, const Rational& sb = 1) {
  SymmetryPair r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i] * sb;
  r.alpha += b.alpha * sb;
  return r;
}

bool is_zero(const SymmetryPair& p) {
  for (const auto& x : p.v)
    if (!x.is_zero()) return false;
  return p.alpha.is_zero();
}

void same_pair_chart(const CheckStmt& s, const std::vector<const SymmetryPair*>& ps) {
  for (const auto* p : ps)
    if (p->chart->size() != ps[0]->chart->size() || p->n != ps[0]->n)
      throw SemanticError(s.pos, "symmetry pairs must share base dimension and degree");
}

// Rebuild every pair on the first pair's chart so brackets combine.
SymmetryPair on_chart(const SymmetryPair& p, const ChartPtr& chart) {
  SymmetryPair r;
  r.chart = chart;
  r.n = p.n;
  std::vector<GPoly> images;
  for (std::size_t i = 0; i < chart->size(); ++i) images.push_back(GPoly::variable(chart, i));
  for (const auto& x : p.v) r.v.push_back(substitute(x, images));
  r.alpha = substitute(p.alpha, images);
  return r;
}

/// Entries where r^T P_bd r differs from d^T P + (-1)^k P d.
std::size_t stokes_violations(const RelativeComplex& r) {
  const auto& tot = r.total();
  const int n = tot.degree();
  std::size_t bad = 0;
  for (int k : tot.complex().degrees()) {
    const int j = n - 1 - k;
    if (tot.complex().dim(j) == 0) continue;
    RMatrix lhs = r.restriction(k).transpose() * r.boundary().pairing(k) * r.restriction(j);
    RMatrix rhs = tot.complex().d(k).transpose() * tot.pairing(k + 1);
    RMatrix second = tot.pairing(k) * tot.complex().d(j);
    rhs = (k % 2 == 0) ? rhs + second : rhs - second;
    RMatrix diff = lhs - rhs;
    for (std::size_t a = 0; a < diff.rows(); ++a)
      for (std::size_t b = 0; b < diff.cols(); ++b) bad += diff(a, b) != 0;
  }
  return bad;
}

std::string mat_text(const Mat& m) {
  std::ostringstream os;
  os.precision(12);
  os << "[";
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

bool is_constant(const APath& p) {
  for (const auto& a : p.values())
    if (a != p.values().front()) return false;
  return true;
}

using Preparer = std::function<Runner(Env&, const CheckStmt&)>;

struct CheckEntry {
  CheckInfo info;
  Preparer prepare;
};

GPoly section_arg(const Env&, const Atom& a, const ChartPtr& chart) {
  if (a.kind == Atom::Kind::String) {
    Expr e;
    try {
      e = parse_expr(a.text);
    } catch (const SyntaxError& ex) {
      throw SemanticError(a.pos, std::string("in section literal: ") + ex.what());
    }
    return eval(e, chart);
  }
  const std::string& n = ident_of(a);
  auto idx = chart->index_of(n);
  if (!idx) throw SemanticError(a.pos, "unknown identifier '" + n + "'");
  return GPoly::variable(chart, *idx);
}

const std::vector<CheckEntry>& entries() {
  static const std::vector<CheckEntry> table = {
      {{"q2", "q2 X", "Q^2 = 0 for a qfield, twist, algebroid, algebra (Chevalley-Eilenberg) or hamiltonian",
        {"q_square", "is_nq", "de_rham_q", "chevalley_eilenberg_q", "algebroid_to_q", "twisted_q", "hamiltonian_to_q"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         Derivation q = q_of(env, s.args[0]);
         return [q] {
           Outcome o;
           Derivation q2 = q_square(q);
           o.holds = q2.is_zero();
           if (!o.holds) o.witnesses.push_back({"Q^2", q2.to_string()});
           return o;
         };
       }},
      {{"master", "master H", "master equation {Theta, Theta} = 0", {"master_equation", "poisson_bracket"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         HamValue h = arg<HamValue>(env, s, 0, "ham");
         return [h] {
           Outcome o;
           GPoly m = master_equation(h.sigma, h.theta);
           o.holds = m.is_zero();
           if (!o.holds) {
             o.witnesses.push_back({"master", m.to_string()});
             o.explanation = "{Theta, Theta} is nonzero";
           }
           return o;
         };
       }},
      {{"derived", "derived H E1 E2 = EXPR",
        "derived bracket {{Theta, E1}, E2} equals EXPR; E is a coordinate or a quoted polynomial",
        {"derived_bracket"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 2);
         if (!s.expected) throw SemanticError(s.pos, "usage: check derived H E1 E2 = EXPR");
         HamValue h = arg<HamValue>(env, s, 0, "ham");
         (void)h;
         throw SemanticError(s.pos, "internal: derived handled separately");
       }},
      {{"dirac", "dirac H z1 z2 ...", "the coordinates z = 0 cut out a Lagrangian Q-invariant submanifold",
        {"lambda_check", "hamiltonian_to_q"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 64);
         no_expected(s);
         HamValue h = arg<HamValue>(env, s, 0, "ham");
         std::vector<std::string> names;
         for (std::size_t i = 1; i < s.args.size(); ++i) {
           const std::string& n = ident_of(s.args[i]);
           if (!h.sigma.chart()->index_of(n)) throw SemanticError(s.args[i].pos, "unknown identifier '" + n + "'");
           names.push_back(n);
         }
         return [h, names] {
           Outcome o;
           o.holds = lambda_check(h.sigma, hamiltonian_to_q(h.sigma, h.theta), names);
           if (!o.holds) o.explanation = "not a Lagrangian Q-submanifold";
           return o;
         };
       }},
      {{"symplectic", "symplectic Q S", "Q preserves the pairing of S and equals {Theta, .} for the recovered Theta",
        {"is_symplectic", "q_to_hamiltonian", "hamiltonian_to_q"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 2);
         no_expected(s);
         Derivation q = q_of(env, s.args[0]);
         DarbouxChart y = arg<DarbouxChart>(env, s, 1, "sigma");
         if (!q.chart()->same_as(*y.chart())) throw SemanticError(s.pos, "Q must live on the chart of the sigma");
         return [q, y] {
           Outcome o;
           Derivation qq(y.chart(), q.degree(), q.components());
           o.holds = is_symplectic(y, qq);
           if (!o.holds) {
             o.explanation = "Q does not preserve the symplectic pairing";
             return o;
           }
           GPoly theta = q_to_hamiltonian(y, qq);
           o.witnesses.push_back({"theta", theta.to_string()});
           o.holds = hamiltonian_to_q(y, theta) == qq;
           return o;
         };
       }},
      {{"algebroid", "algebroid Q", "anchor and structure functions read off Q rebuild Q",
        {"q_to_algebroid", "algebroid_to_q"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         Derivation q = q_of(env, s.args[0]);
         return [q] {
           Outcome o;
           AlgebroidData a = q_to_algebroid(q);
           o.holds = algebroid_to_q(a) == q;
           return o;
         };
       }},
      {{"euler", "euler Q", "[E, Q] = deg(Q) Q for the Euler field E; components scale with their weight",
        {"euler_field", "commutator", "scaling_check", "manifold_degree"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         Derivation q = q_of(env, s.args[0]);
         return [q] {
           Outcome o;
           Derivation e = euler_field(q.chart());
           o.holds = commutator(e, q) == Rational(q.degree()) * q;
           for (const GPoly& c : q.components())
             if (!scaling_check(c, 2)) o.holds = false;
           o.witnesses.push_back({"degree", std::to_string(manifold_degree(*q.chart()))});
           return o;
         };
       }},
      {{"jacobi", "jacobi G",
        "Jacobi identity; with a metric also graded Jacobi, derivation and Q^2 = 0 on g + g[1] + R[2]",
        {"jacobi_violation", "central_extension", "GradedLieAlgebra::jacobi_violation",
         "GradedLieAlgebra::derivation_violation"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         AlgebraValue g = arg<AlgebraValue>(env, s, 0, "algebra");
         return [g] {
           Outcome o;
           if (auto v = jacobi_violation(g.c)) {
             o.holds = false;
             o.witnesses.push_back({"triple", *v});
             return o;
           }
           if (!g.quadratic) return o;
           GradedLieAlgebra ext = central_extension(*g.quadratic);
           if (auto v = ext.jacobi_violation()) o.witnesses.push_back({"graded_jacobi", *v});
           if (auto v = ext.derivation_violation()) o.witnesses.push_back({"derivation", *v});
           if (!ext.differential_squares_to_zero()) o.witnesses.push_back({"Q^2", "nonzero"});
           if (!ext.degrees_consistent()) o.witnesses.push_back({"degrees", "inconsistent"});
           o.holds = o.witnesses.empty();
           o.witnesses.push_back({"extension_dim", std::to_string(ext.dim())});
           return o;
         };
       }},
      {{"ce-jacobi", "ce-jacobi G", "Q^2 = 0 for the Chevalley-Eilenberg Q exactly when the Jacobi identity holds",
        {"chevalley_eilenberg_q", "is_nq", "jacobi_violation"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         AlgebraValue g = arg<AlgebraValue>(env, s, 0, "algebra");
         return [g] {
           Outcome o;
           const bool nq = is_nq(chevalley_eilenberg_q(g.c));
           const bool lie = !jacobi_violation(g.c);
           o.holds = nq == lie;
           o.witnesses.push_back({"q2_zero", nq ? "true" : "false"});
           o.witnesses.push_back({"jacobi", lie ? "true" : "false"});
           return o;
         };
       }},
      {{"cartan", "cartan G", "the Cartan 3-form is nonzero and Chevalley-Eilenberg closed",
        {"cartan_3form", "chevalley_eilenberg_q", "apply"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         QuadraticLieAlgebra g = quadratic(env, s, 0);
         return [g] {
           Outcome o;
           GPoly eta = cartan_3form(g);
           Derivation q = chevalley_eilenberg_q(g.structure());
           o.witnesses.push_back({"eta", eta.to_string()});
           o.holds = !eta.is_zero() && apply(q, eta).is_zero();
           return o;
         };
       }},
      {{"cocycle", "cocycle G N [square]",
        "loop-algebra 2-cocycle identity on modes |m| <= N; 'square' uses the weight m^2",
        {"affine_cocycle_check"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 3);
         no_expected(s);
         QuadraticLieAlgebra g = quadratic(env, s, 0);
         const int n = int_of(s.args[1]);
         bool square = false;
         if (s.args.size() == 3) {
           if (ident_of(s.args[2]) != "square") throw SemanticError(s.args[2].pos, "expected 'square'");
           square = true;
         }
         return [g, n, square] {
           Outcome o;
           CocycleResult r = square ? affine_cocycle_check(g, n, [](int m) { return Rational(m * m); })
                                    : affine_cocycle_check(g, n);
           o.holds = r.holds;
           if (!r.holds) o.witnesses.push_back({"triple", r.witness});
           return o;
         };
       }},
      {{"gauge", "gauge T = ALPHA", "the shift t -> t + alpha intertwines Q_eta and Q_{eta + d alpha}",
        {"gauge_change", "gauge_shift_intertwines"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         if (!s.expected) throw SemanticError(s.pos, "usage: check gauge T = ALPHA");
         TwistData t = arg<TwistData>(env, s, 0, "twist");
         GPoly alpha = eval(*s.expected, t.chart());
         return [t, alpha] {
           Outcome o;
           TwistData t2 = gauge_change(t, alpha);
           o.witnesses.push_back({"eta'", t2.eta().to_string()});
           o.holds = gauge_shift_intertwines(t, alpha);
           return o;
         };
       }},
      {{"leibniz", "leibniz P1 P2 P3", "[s1,[s2,s3]] = [[s1,s2],s3] + [s2,[s1,s3]]", {"symmetry_bracket"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 3, 3);
         no_expected(s);
         const auto& a = arg<SymmetryPair>(env, s, 0, "pair");
         const auto& b = arg<SymmetryPair>(env, s, 1, "pair");
         const auto& c = arg<SymmetryPair>(env, s, 2, "pair");
         same_pair_chart(s, {&a, &b, &c});
         SymmetryPair s1 = a, s2 = on_chart(b, a.chart), s3 = on_chart(c, a.chart);
         return [s1, s2, s3] {
           Outcome o;
           auto br = symmetry_bracket;
           SymmetryPair lhs = br(s1, br(s2, s3));
           SymmetryPair rhs = add(br(br(s1, s2), s3), br(s2, br(s1, s3)));
           SymmetryPair diff = add(lhs, rhs, -1);
           o.holds = is_zero(diff);
           if (!o.holds) o.witnesses.push_back({"defect", to_string(diff)});
           return o;
         };
       }},
      {{"skew", "skew P1 P2", "[s1,s2] = -[s2,s1]; the symmetric part is recorded when it fails", {"symmetry_bracket"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 2);
         no_expected(s);
         const auto& a = arg<SymmetryPair>(env, s, 0, "pair");
         const auto& b = arg<SymmetryPair>(env, s, 1, "pair");
         same_pair_chart(s, {&a, &b});
         SymmetryPair s1 = a, s2 = on_chart(b, a.chart);
         return [s1, s2] {
           Outcome o;
           SymmetryPair sym = add(symmetry_bracket(s1, s2), symmetry_bracket(s2, s1));
           o.holds = is_zero(sym);
           if (!o.holds) o.witnesses.push_back({"symmetric_part", to_string(sym)});
           return o;
         };
       }},
      {{"nonskew", "nonskew M N", "search for pairs on R^M in degree N whose bracket is not skew",
        {"find_nonskew_witness", "symmetry_bracket"}},
       [](Env&, const CheckStmt& s) -> Runner {
         arity(s, 2, 2);
         no_expected(s);
         const int m = int_of(s.args[0]), n = int_of(s.args[1]);
         if (m < 1 || m > 4 || n < 1) throw SemanticError(s.pos, "nonskew needs 1 <= M <= 4 and N >= 1");
         return [m, n] {
           Outcome o;
           auto w = find_nonskew_witness(m, n);
           o.holds = w.has_value();
           if (w) {
             o.witnesses.push_back({"s1", to_string(w->first)});
             o.witnesses.push_back({"s2", to_string(w->second)});
             o.witnesses.push_back({"[s1,s2]", to_string(symmetry_bracket(w->first, w->second))});
             o.witnesses.push_back({"[s2,s1]", to_string(symmetry_bracket(w->second, w->first))});
           }
           return o;
         };
       }},
      {{"decode", "decode P1 P2", "[[Q, iota1], iota2] decodes to the bracket of the pairs",
        {"iota_encode", "iota_decode", "symmetry_q", "commutator", "symmetry_bracket"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 2);
         no_expected(s);
         const auto& a = arg<SymmetryPair>(env, s, 0, "pair");
         const auto& b = arg<SymmetryPair>(env, s, 1, "pair");
         same_pair_chart(s, {&a, &b});
         SymmetryPair s1 = a, s2 = on_chart(b, a.chart);
         return [s1, s2] {
           Outcome o;
           Derivation q = symmetry_q(s1.chart);
           Derivation d = commutator(commutator(q, iota_encode(s1)), iota_encode(s2));
           SymmetryPair dec = iota_decode(d, s1.n);
           SymmetryPair br = symmetry_bracket(s1, s2);
           o.holds = dec == br;
           o.witnesses.push_back({"bracket", to_string(br)});
           if (!o.holds) o.witnesses.push_back({"decoded", to_string(dec)});
           return o;
         };
       }},
      {{"isotropic", "isotropic P", "[iota, iota] = 0 exactly when v contracted into alpha vanishes",
        {"iota_encode", "commutator", "contraction", "interior"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         SymmetryPair p = arg<SymmetryPair>(env, s, 0, "pair");
         return [p] {
           Outcome o;
           Derivation i = iota_encode(p);
           const bool iso = commutator(i, i).is_zero();
           const GPoly c = contraction(p);
           o.holds = iso == c.is_zero();
           o.witnesses.push_back({"[iota,iota]=0", iso ? "true" : "false"});
           o.witnesses.push_back({"v.alpha", c.to_string()});
           return o;
         };
       }},
      {{"holonomy", "holonomy P",
        "constant paths: |hol - exp(X)| < tol; otherwise |hol_N - hol_2N| < tol; paths with base use the action groupoid",
        {"integrate", "action_integrate", "anchor_residual", "orthogonality_residual", "determinant_residual"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         APath p = arg<APath>(env, s, 0, "path");
         const Options opt = env.opt;
         return [p, opt] {
           Outcome o;
           if (p.has_base()) {
             GroupoidElement g = action_integrate(p, opt.steps);
             const double r = (g.target - p.base().back()).norm();
             o.residuals.push_back({"target", r});
             o.residuals.push_back({"anchor", anchor_residual(p)});
             o.holds = r < opt.tolerance;
             o.witnesses.push_back({"holonomy", mat_text(g.holonomy)});
             return o;
           }
           const Mat h = integrate(p, opt.steps).holonomy;
           double r;
           if (is_constant(p)) {
             r = (h - Mat(p.values().front().exp())).norm();
             o.residuals.push_back({"exp", r});
           } else {
             r = (h - integrate(p, 2 * opt.steps).holonomy).norm();
             o.residuals.push_back({"step_doubling", r});
           }
           if ((p.values().front() + p.values().front().transpose()).norm() == 0) {
             o.residuals.push_back({"orthogonality", orthogonality_residual(h)});
             o.residuals.push_back({"determinant", determinant_residual(h)});
           }
           o.witnesses.push_back({"holonomy", mat_text(h)});
           o.holds = r < opt.tolerance;
           return o;
         };
       }},
      {{"reparam", "reparam P", "holonomy is invariant under s -> s + sin(2 pi s)/(4 pi)",
        {"reparametrize_check"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         APath p = arg<APath>(env, s, 0, "path");
         const Options opt = env.opt;
         return [p, opt] {
           Outcome o;
           Reparam r{[](double t) { return t + std::sin(2 * M_PI * t) / (4 * M_PI); },
                     [](double t) { return 1 + std::cos(2 * M_PI * t) / 2; }};
           const double res = reparametrize_check(p, r, opt.steps, 2);
           o.residuals.push_back({"reparam", res});
           o.holds = res < opt.tolerance;
           return o;
         };
       }},
      {{"concat", "concat P1 P2", "hol(P1 . P2) = hol(P1) hol(P2) and hol(reverse P1) = hol(P1)^-1",
        {"concatenate", "reverse", "integrate"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 2);
         no_expected(s);
         APath p = arg<APath>(env, s, 0, "path"), q = arg<APath>(env, s, 1, "path");
         if (p.dim() != q.dim()) throw SemanticError(s.pos, "paths have different dimensions");
         const Options opt = env.opt;
         return [p, q, opt] {
           Outcome o;
           const Mat hp = integrate(p, opt.steps).holonomy, hq = integrate(q, opt.steps).holonomy;
           const Mat hpq = integrate(concatenate(p, q), 2 * opt.steps).holonomy;
           const Mat hr = integrate(reverse(p), opt.steps).holonomy;
           const double c = (hpq - hp * hq).norm();
           const double r = (hr * hp - Mat::Identity(p.dim(), p.dim())).norm();
           o.residuals.push_back({"concatenation", c});
           o.residuals.push_back({"reverse", r});
           o.holds = c < opt.tolerance && r < opt.tolerance;
           return o;
         };
       }},
      {{"wzw", "wzw F1 F2 F3", "(F1 F2) F3 = F1 (F2 F3) for the WZW-twisted product of grid maps",
        {"wzw_product", "wzw_associativity", "cross_term"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 3, 3);
         no_expected(s);
         GridMap a = arg<GridMap>(env, s, 0, "gridmap"), b = arg<GridMap>(env, s, 1, "gridmap"),
                 c = arg<GridMap>(env, s, 2, "gridmap");
         if (a.nx() != b.nx() || a.nx() != c.nx() || a.ny() != b.ny() || a.ny() != c.ny())
           throw SemanticError(s.pos, "grid maps must have the same size");
         const double tol = env.opt.tolerance;
         return [a, b, c, tol] {
           Outcome o;
           AssociativityResidual r = wzw_associativity(a, b, c);
           o.residuals.push_back({"node", r.node});
           o.residuals.push_back({"omega", r.omega});
           o.holds = r.node < tol && r.omega < tol;
           return o;
         };
       }},
      {{"wzw-flux", "wzw-flux K1 K2 ...",
        "flux of the cross term through cubes equals -(f*eta - f1*eta - f2*eta) in the limit; random fields from --seed",
        {"cross_term_defect", "su2_cartan", "quat_log", "quat_exp"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 8);
         no_expected(s);
         std::vector<int> ks;
         for (const auto& a : s.args) {
           ks.push_back(int_of(a));
           if (ks.back() < 2 || ks.back() > 64) throw SemanticError(a.pos, "cube counts must lie in 2..64");
           if (ks.size() > 1 && ks.back() <= ks[ks.size() - 2])
             throw SemanticError(a.pos, "cube counts must increase");
         }
         const std::uint64_t seed = env.opt.seed;
         return [ks, seed] {
           Outcome o;
           Rng rng(seed, 0xF1);
           SU2Field3 f1 = random_field3(rng), f2 = random_field3(rng);
           std::vector<double> d;
           for (int k : ks) {
             d.push_back(cross_term_defect(f1, f2, k));
             o.residuals.push_back({"defect_" + std::to_string(k), d.back()});
           }
           const double order = std::log(d.front() / d.back()) / std::log(double(ks.back()) / ks.front());
           o.residuals.push_back({"observed_order", order});
           o.holds = order >= 1.0;
           if (!o.holds) o.explanation = "defect does not converge at first order";
           return o;
         };
       }},
      {{"lemma1", "lemma1 C N", "H of C tensor C(B^N, S^{N-1}) is H(C) shifted by N", {"suspension_check", "relative_cube", "tensor"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 2, 2);
         no_expected(s);
         GradedComplex c = total_of(env, s.args[0]);
         const int n = int_of(s.args[1]);
         if (n < 1 || n > 4) throw SemanticError(s.args[1].pos, "lemma1 needs 1 <= N <= 4");
         return [c, n] {
           Outcome o;
           SuspensionResult r = suspension_check(c, n);
           o.holds = r.shifted;
           o.witnesses.push_back({"base", dims_text(r.base)});
           o.witnesses.push_back({"relative", dims_text(r.relative)});
           o.witnesses.push_back({"degree0_vanishes", r.degree0_vanishes ? "true" : "false"});
           return o;
         };
       }},
      {{"lemma3", "lemma3 R", "Z = (B_0)^perp; degraded to the inclusion and cohomology when the pairing is degenerate",
        {"lemma3_orthogonality", "relative_pairing", "cohomology"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         RelativeComplex r = arg<RelativeComplex>(env, s, 0, "complex");
         return [r] {
           Outcome o;
           Lemma3Result l = lemma3_orthogonality(r);
           o.holds = l.holds;
           o.degraded = l.mode == Lemma3Mode::Degraded && l.holds;
           o.explanation = l.report;
           if (l.mode == Lemma3Mode::Strict) {
             o.witnesses.push_back({"quotient", dims_text(l.quotient_dims)});
             o.witnesses.push_back({"quotient_nondegenerate", l.quotient_nondegenerate ? "true" : "false"});
           } else {
             o.witnesses.push_back({"cohomology_nondegenerate", l.cohomology_nondegenerate ? "true" : "false"});
           }
           return o;
         };
       }},
      {{"stokes", "stokes R", "<r u, r v>_bd = <du, v> + (-1)^k <u, dv> exactly", {"RelativeComplex"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         RelativeComplex r = arg<RelativeComplex>(env, s, 0, "complex");
         return [r] {
           Outcome o;
           const std::size_t bad = stokes_violations(r);
           o.residuals.push_back({"violations", double(bad)});
           o.holds = bad == 0;
           return o;
         };
       }},
      {{"boundary-lagrangian", "boundary-lagrangian R",
        "the image of H(total) in H(boundary) is isotropic of half dimension", {"boundary_lagrangian"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         RelativeComplex r = arg<RelativeComplex>(env, s, 0, "complex");
         return [r] {
           Outcome o;
           LagrangianResult l = boundary_lagrangian(r);
           o.holds = l.lagrangian();
           o.witnesses.push_back({"image", dims_text(l.image_dims)});
           o.witnesses.push_back({"boundary", dims_text(l.boundary_dims)});
           o.witnesses.push_back({"isotropic", l.isotropic ? "true" : "false"});
           o.witnesses.push_back({"half_dimension", l.half_dimension ? "true" : "false"});
           return o;
         };
       }},
      {{"betti", "betti R H0 H1 ...", "cohomology dimensions in degrees 0, 1, ... (all others zero)",
        {"cohomology"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 16);
         no_expected(s);
         RelativeComplex r = arg<RelativeComplex>(env, s, 0, "complex");
         std::map<int, std::size_t> want;
         for (std::size_t i = 1; i < s.args.size(); ++i) {
           const int h = int_of(s.args[i]);
           if (h < 0) throw SemanticError(s.args[i].pos, "dimensions are non-negative");
           if (h) want[static_cast<int>(i - 1)] = h;
         }
         return [r, want] {
           Outcome o;
           Cohomology h = cohomology(r.total().complex());
           std::map<int, std::size_t> got;
           for (const auto& [k, n] : h.dims)
             if (n) got[k] = n;
           o.holds = got == want;
           o.witnesses.push_back({"H", dims_text(got)});
           o.witnesses.push_back({"euler", std::to_string(r.total().complex().euler_characteristic())});
           return o;
         };
       }},
      {{"duality", "duality R", "induced pairing on cohomology is nondegenerate (relative-absolute with a boundary)",
        {"cohomology_pairing", "SymplecticComplex::compatibility_violation", "relative_pairing"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         RelativeComplex r = arg<RelativeComplex>(env, s, 0, "complex");
         return [r] {
           Outcome o;
           if (r.boundary().complex().total_dim() == 0) {
             CohomologyPairing p = cohomology_pairing(r.total());
             o.holds = p.nondegenerate && p.graded_symmetric;
             o.witnesses.push_back({"graded_symmetric", p.graded_symmetric ? "true" : "false"});
             o.witnesses.push_back({"nondegenerate", p.nondegenerate ? "true" : "false"});
           } else {
             RelativePairing p = relative_pairing(r);
             o.holds = p.nondegenerate;
             o.witnesses.push_back({"nondegenerate", p.nondegenerate ? "true" : "false"});
           }
           return o;
         };
       }},
      {{"nmap", "nmap N", "component dimensions are binomial(n, weight) and the pairing is nondegenerate",
        {"nmap_space"}},
       [](Env& env, const CheckStmt& s) -> Runner {
         arity(s, 1, 1);
         no_expected(s);
         NMapSpace m = arg<NMapSpace>(env, s, 0, "nmap");
         return [m] {
           Outcome o;
           auto binom = [](int n, int k) {
             std::size_t r = 1;
             for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
             return r;
           };
           std::ostringstream dims;
           bool counts = true;
           std::size_t total = 0;
           for (const auto& c : m.components) {
             dims << (total ? " " : "") << c.coordinate << ":" << c.forms.size();
             counts = counts && c.forms.size() == binom(m.n, c.weight);
             total += c.forms.size();
           }
           o.holds = counts && m.nondegenerate() && total == m.total_dim();
           o.witnesses.push_back({"components", std::to_string(m.components.size())});
           o.witnesses.push_back({"dims", dims.str()});
           return o;
         };
       }},
  };
  return table;
}

Runner prepare_derived(Env& env, const CheckStmt& s) {
  arity(s, 3, 3);
  if (!s.expected) throw SemanticError(s.pos, "usage: check derived H E1 E2 = EXPR");
  HamValue h = arg<HamValue>(env, s, 0, "ham");
  GPoly e1 = section_arg(env, s.args[1], h.sigma.chart());
  GPoly e2 = section_arg(env, s.args[2], h.sigma.chart());
  GPoly want = eval(*s.expected, h.sigma.chart());
  return [h, e1, e2, want] {
    Outcome o;
    GPoly got = derived_bracket(h.sigma, h.theta, e1, e2);
    o.holds = got == want;
    o.witnesses.push_back({"bracket", got.to_string()});
    if (!o.holds) o.witnesses.push_back({"expected", want.to_string()});
    return o;
  };
}

Runner prepare(Env& env, const CheckStmt& s) {
  if (s.check == "derived") return prepare_derived(env, s);
  for (const auto& e : entries())
    if (e.info.name == s.check) return e.prepare(env, s);
  throw SemanticError(s.pos, "unknown check '" + s.check + "'");
}

std::vector<std::string> inputs_of(const CheckStmt& s) {
  std::vector<std::string> in;
  for (const auto& a : s.args) in.push_back(a.kind == Atom::Kind::String ? "\"" + a.text + "\"" : a.text);
  if (s.expected) in.push_back("= " + print(*s.expected));
  return in;
}

}  // namespace

const std::vector<CheckInfo>& check_table() {
  static const std::vector<CheckInfo> t = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return t;
}

const std::vector<ConstructorInfo>& constructor_table() {
  static const std::vector<ConstructorInfo> t = {
      {"chart", "tangent", {"Chart::tangent_shifted"}},
      {"qfield", "derham", {"de_rham_q"}},
      {"qfield", "ce", {"chevalley_eilenberg_q"}},
      {"qfield", "algebroid", {"algebroid_to_q"}},
      {"qfield", "twisted", {"twisted_q"}},
      {"qfield", "ham", {"hamiltonian_to_q"}},
      {"qfield", "symmetry", {"symmetry_q", "symmetry_chart"}},
      {"sigma", "cotangent", {"DarbouxChart::cotangent1"}},
      {"sigma", "courant", {"DarbouxChart::standard_courant"}},
      {"algebra", "so3", {"QuadraticLieAlgebra::so3"}},
      {"algebra", "sl2", {"QuadraticLieAlgebra::sl2"}},
      {"algebra", "abelian", {"QuadraticLieAlgebra::abelian"}},
      {"algebra", "random", {}},
      {"path", "constant", {"APath::constant"}},
      {"path", "random", {"APath"}},
      {"path", "orbit", {"APath"}},
      {"complex", "torus", {"lattice_model", "simplicial_model", "Simplicial2::grid"}},
      {"complex", "cylinder", {"lattice_model", "simplicial_model", "Simplicial2::grid"}},
      {"complex", "disk", {"lattice_model", "simplicial_model", "Simplicial2::grid"}},
      {"complex", "interval", {"interval_model"}},
      {"complex", "interval_cup", {"interval_cup_model"}},
      {"complex", "double", {"double_complex"}},
      {"complex", "cube", {"relative_cube"}},
      {"complex", "tensor", {"tensor"}},
      {"complex", "point", {"point_complex"}},
      {"gridmap", "random", {"GridMap::sample"}},
      {"gridmap", "identity", {"GridMap"}},
  };
  return t;
}

const std::vector<ConstructorInfo>& declaration_table() {
  static const std::vector<ConstructorInfo> t = {
      {"chart", "{...}", {"Chart::make"}},
      {"qfield", "{...}", {"Derivation"}},
      {"sigma", "{...}", {"DarbouxChart"}},
      {"ham", "= expr", {"GPoly", "de_rham"}},
      {"ham", "bivector", {"poisson_hamiltonian"}},
      {"ham", "courant", {"courant_hamiltonian"}},
      {"algebroid", "{...}", {"algebroid_chart", "AlgebroidData::validate"}},
      {"algebra", "{...}", {"QuadraticLieAlgebra", "metric_is_invariant"}},
      {"twist", "= expr", {"TwistData"}},
      {"pair", "(v, alpha)", {"SymmetryPair::validate"}},
      {"path", "{...}", {"APath"}},
      {"nmap", "= sigma deg n", {"nmap_space"}},
      {"load", "complex", {"read_complex", "load_complex"}},
      {"load", "path", {"APath::read", "APath::load"}},
      {"load", "gridmap", {"GridMap::read", "GridMap::load"}},
  };
  return t;
}

Report execute(const Program& p, const Options& opt, const std::string& source_name) {
  Env env(opt);
  struct Pending {
    const CheckStmt* stmt;
    Runner run;
  };
  std::vector<Pending> pending;
  for (const auto& st : p.statements) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ChartStmt>) declare_chart(env, s);
          if constexpr (std::is_same_v<T, QFieldStmt>) declare_qfield(env, s);
          if constexpr (std::is_same_v<T, SigmaStmt>) declare_sigma(env, s);
          if constexpr (std::is_same_v<T, HamStmt>) declare_ham(env, s);
          if constexpr (std::is_same_v<T, AlgebroidStmt>) declare_algebroid(env, s);
          if constexpr (std::is_same_v<T, AlgebraStmt>) declare_algebra(env, s);
          if constexpr (std::is_same_v<T, TwistStmt>) declare_twist(env, s);
          if constexpr (std::is_same_v<T, PairStmt>) declare_pair(env, s);
          if constexpr (std::is_same_v<T, PathStmt>) declare_path(env, s);
          if constexpr (std::is_same_v<T, ObjectStmt>) {
            if (s.kind == ObjectStmt::Kind::Complex) {
              declare_complex(env, s);
            } else {
              declare_gridmap(env, s);
            }
          }
          if constexpr (std::is_same_v<T, NMapStmt>) declare_nmap(env, s);
          if constexpr (std::is_same_v<T, LoadStmt>) declare_load(env, s);
          if constexpr (std::is_same_v<T, CheckStmt>) pending.push_back({&s, prepare(env, s)});
        },
        st);
  }

  Report report;
  report.source = source_name;
  report.steps = opt.steps;
  report.tolerance = opt.tolerance;
  report.seed = opt.seed;
  for (auto& job : pending) {
    const CheckStmt& s = *job.stmt;
    CheckRecord rec;
    rec.check = s.check;
    rec.inputs = inputs_of(s);
    rec.line = s.pos.line;
    rec.expect_fail = s.expect_fail;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = job.run();
    } catch (const std::exception& e) {
      o = Outcome{};
      o.holds = false;
      o.explanation = std::string("error: ") + e.what();
    }
    rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rec.holds = o.holds;
    rec.residuals = std::move(o.residuals);
    rec.witnesses = std::move(o.witnesses);
    rec.explanation = std::move(o.explanation);
    if (o.degraded && !s.expect_fail) {
      rec.verdict = Verdict::Degraded;
    } else {
      rec.verdict = o.holds != s.expect_fail ? Verdict::Pass : Verdict::Fail;
    }
    if (s.expect_fail && rec.verdict == Verdict::Fail) rec.explanation = "expected a failure but the property holds";
    report.checks.push_back(std::move(rec));
  }
  return report;
}

const std::string& prelude() {
  static const std::string text = R"(algebra so3 = so3;
algebra sl2 = sl2;
chart T1 = tangent(1);
chart T2 = tangent(2);
chart T3 = tangent(3);
chart T4 = tangent(4);
qfield dR1 = derham(T1);
qfield dR2 = derham(T2);
qfield dR3 = derham(T3);
qfield dR4 = derham(T4);
qfield CEso3 = ce(so3);
qfield CEsl2 = ce(sl2);
sigma Y3 = cotangent(3);
sigma C2 = courant(2);
sigma C3 = courant(3);
ham TC2 on C2 = courant;
ham TC3 on C3 = courant;
nmap N3 = Y3 deg 1;
nmap NC2 = C2 deg 2;
complex torus33 = torus(3, 3, so3);
complex torus44 = torus(4, 4, so3);
complex cylinder33 = cylinder(3, 3, so3);
complex interval4 = interval(4, point, 0);
complex pt = point;
path X = constant(0.3, -1.2, 0.8);
path W = random(8, 1);
)";
  return text;
}

}  // namespace gq::dsl
