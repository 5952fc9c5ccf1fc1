#pragma once

// Parser and pretty-printer for the gq declaration language.
//
//   program   := statement*
//   statement := chart | qfield | sigma | ham | algebroid | algebra | twist
//              | pair | path | complex | gridmap | nmap | load | check
//
// Block statements end with '}', the others with ';'. Expressions are
// polynomials over declared variables with rational coefficients and d(...).
// The full grammar is in docs/dsl.md.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gq::dsl {

/// Source position. Positions never take part in structural equality.
struct Pos {
  int line = 0, col = 0;
  bool operator==(const Pos&) const { return true; }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(Pos p, const std::string& msg);
  Pos pos;
};

/// Raised by the semantic pass and while binding declarations.
class SemanticError : public std::runtime_error {
 public:
  SemanticError(Pos p, const std::string& msg);
  Pos pos;
};

struct Expr {
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, D };
  Kind kind = Kind::Num;
  std::string text;  // digits for Num, name for Var, exponent for Pow
  std::vector<Expr> kids;
  Pos pos;
  bool operator==(const Expr&) const = default;
};

/// Identifier, number ("3", "-0.25", "1/2", "1e-3") or string literal.
struct Atom {
  enum class Kind { Ident, Number, String };
  Kind kind = Kind::Ident;
  std::string text;
  Pos pos;
  bool operator==(const Atom&) const = default;
};

/// name or name(args).
struct Call {
  std::string name;
  std::vector<Atom> args;
  bool parens = false;
  Pos pos;
  bool operator==(const Call&) const = default;
};

struct Weighted {
  std::string name;
  int weight = 0;
  bool operator==(const Weighted&) const = default;
};

struct ChartStmt {
  std::string name;
  std::vector<Weighted> vars;
  std::vector<std::pair<std::string, std::string>> derham;  // d(x) = xi
  std::optional<Call> ctor;                                 // tangent(m)
  Pos pos;
  bool operator==(const ChartStmt&) const = default;
};

struct QFieldStmt {
  std::string name;
  std::string chart;  // empty when built by ctor
  std::vector<std::pair<std::string, Expr>> images;
  std::optional<Call> ctor;  // derham(C), ce(G), algebroid(A), twisted(T), ham(H)
  Pos pos;
  bool operator==(const QFieldStmt&) const = default;
};

struct SigmaPairDecl {
  Weighted q, p;
  bool operator==(const SigmaPairDecl&) const = default;
};

struct SigmaStmt {
  std::string name;
  int n = 0;
  std::vector<SigmaPairDecl> pairs;
  std::vector<std::pair<std::string, std::string>> derham;
  std::optional<Call> ctor;  // cotangent(m), courant(m)
  Pos pos;
  bool operator==(const SigmaStmt&) const = default;
};

struct BivectorEntry {
  std::string a, b;
  Expr value;
  bool operator==(const BivectorEntry&) const = default;
};

struct HamStmt {
  std::string name, sigma;
  std::optional<Expr> expr;             // twist when courant is set
  std::vector<BivectorEntry> bivector;  // used when expr is empty
  bool courant = false;                 // theta^a p_a [+ twist]
  Pos pos;
  bool operator==(const HamStmt&) const = default;
};

struct IndexedExpr {
  std::vector<int> index;
  Expr value;
  bool operator==(const IndexedExpr&) const = default;
};

struct AlgebroidStmt {
  std::string name;
  int base = 0, rank = 0;
  std::vector<IndexedExpr> anchor;     // rho(a, i)
  std::vector<IndexedExpr> structure;  // c(k, i, j)
  Pos pos;
  bool operator==(const AlgebroidStmt&) const = default;
};

struct BracketEntry {
  int i = 0, j = 0;
  std::vector<Atom> value;
  bool operator==(const BracketEntry&) const = default;
};

struct AlgebraStmt {
  std::string name;
  std::optional<Call> ctor;  // so3, sl2, abelian(d), random(d, seed)
  int dim = 0;
  std::vector<BracketEntry> brackets;
  std::vector<std::vector<Atom>> metric;  // empty: no metric
  Pos pos;
  bool operator==(const AlgebraStmt&) const = default;
};

struct TwistStmt {
  std::string name;
  int base = 0, n = 0;
  Expr eta;
  Pos pos;
  bool operator==(const TwistStmt&) const = default;
};

struct PairStmt {
  std::string name;
  int base = 0, n = 0;
  std::vector<Expr> v;
  Expr alpha;
  Pos pos;
  bool operator==(const PairStmt&) const = default;
};

struct PathSample {
  Atom t;
  std::vector<Atom> a;
  std::vector<Atom> base;
  bool operator==(const PathSample&) const = default;
};

struct PathStmt {
  std::string name;
  std::optional<Call> ctor;  // constant(x, y, z), random(knots, salt)
  int dim = 0;
  std::vector<PathSample> samples;
  Pos pos;
  bool operator==(const PathStmt&) const = default;
};

/// complex NAME = ctor(...); and gridmap NAME = ctor(...);
struct ObjectStmt {
  enum class Kind { Complex, GridMap };
  Kind kind = Kind::Complex;
  std::string name;
  Call ctor;
  Pos pos;
  bool operator==(const ObjectStmt&) const = default;
};

struct NMapStmt {
  std::string name, sigma;
  int n = 0;
  Pos pos;
  bool operator==(const NMapStmt&) const = default;
};

struct LoadStmt {
  std::string kind;  // complex, path, gridmap
  std::string name;
  std::string file;
  Pos pos;
  bool operator==(const LoadStmt&) const = default;
};

struct CheckStmt {
  std::string check;
  std::vector<Atom> args;
  std::optional<Expr> expected;  // "= expr"
  bool expect_fail = false;
  Pos pos;
  bool operator==(const CheckStmt&) const = default;
};

using Statement = std::variant<ChartStmt, QFieldStmt, SigmaStmt, HamStmt, AlgebroidStmt, AlgebraStmt,
                               TwistStmt, PairStmt, PathStmt, ObjectStmt, NMapStmt, LoadStmt, CheckStmt>;

struct Program {
  std::vector<Statement> statements;
  bool operator==(const Program&) const = default;
};

Program parse(const std::string& source);
Expr parse_expr(const std::string& source);

/// Canonical source text; parse(print(p)) == p.
std::string print(const Program& p);
std::string print(const Expr& e);
std::string print(const Statement& s);

Pos position_of(const Statement& s);
/// Name bound by a declaration, empty for checks.
std::string bound_name(const Statement& s);
/// Keyword introducing the statement.
std::string keyword_of(const Statement& s);

}  // namespace gq::dsl
