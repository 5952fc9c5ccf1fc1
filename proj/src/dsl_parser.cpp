#include "gq/dsl_parser.hpp"

#include <cctype>
#include <sstream>

namespace gq::dsl {

SyntaxError::SyntaxError(Pos p, const std::string& msg)
    : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.col) + ": syntax error: " + msg), pos(p) {}

SemanticError::SemanticError(Pos p, const std::string& msg)
    : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.col) + ": " + msg), pos(p) {}

namespace {

struct Token {
  enum Kind { Ident, Int, Real, String, Punct, End };
  Kind kind = End;
  std::string text;
  Pos pos;
  bool spaced = true;  // whitespace (or start of input) before the token
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  bool spaced = true;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      spaced = true;
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      spaced = true;
      continue;
    }
    Token t;
    t.pos = {line, col};
    t.spaced = spaced;
    spaced = false;
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && j + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[j + 1])))) {
      t.kind = Token::Int;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        t.kind = Token::Real;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          t.kind = Token::Real;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
    } else if (c == '"') {
      ++j;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw SyntaxError(t.pos, "unterminated string literal");
      t.kind = Token::String;
      t.text = src.substr(i + 1, j - i - 1);
      advance(j + 1 - i);
      out.push_back(t);
      continue;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      j = i + 2;
      t.kind = Token::Punct;
    } else if (std::string("{}()[];:,=+-*/^|").find(c) != std::string::npos) {
      j = i + 1;
      t.kind = Token::Punct;
    } else {
      throw SyntaxError(t.pos, std::string("unexpected character '") + c + "'");
    }
    if (t.kind != Token::String) t.text = src.substr(i, j - i);
    advance(j - i);
    out.push_back(t);
  }
  Token end;
  end.kind = Token::End;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Token::End) return "end of input";
  if (t.kind == Token::String) return "\"" + t.text + "\"";
  return "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Program program() {
    Program p;
    while (peek().kind != Token::End) p.statements.push_back(statement());
    return p;
  }

  Expr lone_expr() {
    Expr e = expr();
    if (peek().kind != Token::End) fail("end of expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  const Token& next() { return t_[std::min(i_++, t_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().pos, "expected " + expected + ", found " + describe(peek()));
  }
  bool is(const std::string& punct) const {
    return (peek().kind == Token::Punct || peek().kind == Token::Ident) && peek().text == punct;
  }
  bool accept(const std::string& s) {
    if (!is(s)) return false;
    ++i_;
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail("'" + s + "'");
  }
  std::string ident(const std::string& what = "identifier") {
    if (peek().kind != Token::Ident) fail(what);
    return next().text;
  }
  int integer(const std::string& what = "integer") {
    bool neg = false;
    if (is("-")) {
      neg = true;
      ++i_;
    }
    if (peek().kind != Token::Int) fail(what);
    const Token& t = next();
    try {
      const int v = std::stoi(t.text);
      return neg ? -v : v;
    } catch (const std::exception&) {
      throw SyntaxError(t.pos, "integer out of range");
    }
  }

  Atom atom() {
    Atom a;
    a.pos = peek().pos;
    if (peek().kind == Token::Ident) {
      a.kind = Atom::Kind::Ident;
      a.text = next().text;
      return a;
    }
    if (peek().kind == Token::String) {
      a.kind = Atom::Kind::String;
      a.text = next().text;
      return a;
    }
    a.kind = Atom::Kind::Number;
    if (accept("-")) a.text = "-";
    if (peek().kind != Token::Int && peek().kind != Token::Real) fail("number, identifier or string");
    const Token& n = next();
    a.text += n.text;
    if (n.kind == Token::Int && is("/") && peek(1).kind == Token::Int) {
      ++i_;
      a.text += "/" + next().text;
    }
    return a;
  }

  std::vector<Atom> atom_list(const std::string& stop) {
    std::vector<Atom> out;
    if (is(stop)) return out;
    out.push_back(atom());
    while (accept(",")) out.push_back(atom());
    return out;
  }

  Call call() {
    Call c;
    c.pos = peek().pos;
    c.name = ident("constructor name");
    if (accept("(")) {
      c.parens = true;
      c.args = atom_list(")");
      expect(")");
    }
    return c;
  }

  // expr := term (('+' | '-') term)*
  Expr expr() {
    Expr e = term();
    while (is("+") || is("-")) {
      Expr n;
      n.pos = peek().pos;
      n.kind = next().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      n.kids = {std::move(e), term()};
      e = std::move(n);
    }
    return e;
  }
  // term := unary ('*' unary | '/' integer)*
  Expr term() {
    Expr e = unary();
    while (is("*") || is("/")) {
      Expr n;
      n.pos = peek().pos;
      if (next().text == "*") {
        n.kind = Expr::Kind::Mul;
        n.kids = {std::move(e), unary()};
      } else {
        n.kind = Expr::Kind::Div;
        if (peek().kind != Token::Int) fail("integer denominator");
        Expr d;
        d.pos = peek().pos;
        d.text = next().text;
        n.kids = {std::move(e), std::move(d)};
      }
      e = std::move(n);
    }
    return e;
  }
  Expr unary() {
    if (is("-")) {
      Expr n;
      n.pos = next().pos;
      n.kind = Expr::Kind::Neg;
      n.kids = {unary()};
      return n;
    }
    Expr e = primary();
    if (is("^")) {
      Expr n;
      n.pos = next().pos;
      n.kind = Expr::Kind::Pow;
      if (peek().kind != Token::Int) fail("integer exponent");
      n.text = next().text;
      n.kids = {std::move(e)};
      return n;
    }
    return e;
  }
  Expr primary() {
    Expr e;
    e.pos = peek().pos;
    if (peek().kind == Token::Int) {
      e.kind = Expr::Kind::Num;
      e.text = next().text;
      return e;
    }
    if (peek().kind == Token::Real) throw SyntaxError(peek().pos, "decimal literals are not allowed in polynomials; use p/q");
    if (peek().kind == Token::Ident) {
      if (peek().text == "d" && peek(1).kind == Token::Punct && peek(1).text == "(") {
        i_ += 2;
        e.kind = Expr::Kind::D;
        e.kids = {expr()};
        expect(")");
        return e;
      }
      e.kind = Expr::Kind::Var;
      e.text = next().text;
      return e;
    }
    if (accept("(")) {
      Expr inner = expr();
      expect(")");
      return inner;
    }
    fail("polynomial expression");
  }

  std::vector<std::pair<std::string, std::string>> derham_entry(std::vector<std::pair<std::string, std::string>>& out) {
    // d(x) = xi;
    expect("(");
    std::string x = ident("coordinate");
    expect(")");
    expect("=");
    out.push_back({x, ident("coordinate")});
    expect(";");
    return out;
  }

  Weighted weighted() {
    Weighted w;
    w.name = ident("coordinate name");
    expect(":");
    w.weight = integer("weight");
    return w;
  }

  Statement statement() {
    const Token& kw = peek();
    if (kw.kind != Token::Ident) fail("statement keyword");
    const std::string k = kw.text;
    if (k == "chart") return chart();
    if (k == "qfield") return qfield();
    if (k == "sigma") return sigma();
    if (k == "ham") return ham();
    if (k == "algebroid") return algebroid();
    if (k == "algebra") return algebra();
    if (k == "twist") return twist();
    if (k == "pair") return pair();
    if (k == "path") return path();
    if (k == "complex" || k == "gridmap") return object();
    if (k == "nmap") return nmap();
    if (k == "load") return load();
    if (k == "check") return check();
    fail("statement keyword");
  }

  ChartStmt chart() {
    ChartStmt s;
    s.pos = next().pos;
    s.name = ident("chart name");
    if (accept("=")) {
      s.ctor = call();
      expect(";");
      return s;
    }
    expect("{");
    while (!accept("}")) {
      if (is("d") && peek(1).text == "(") {
        ++i_;
        derham_entry(s.derham);
        continue;
      }
      s.vars.push_back(weighted());
      expect(";");
    }
    return s;
  }

  QFieldStmt qfield() {
    QFieldStmt s;
    s.pos = next().pos;
    s.name = ident("field name");
    if (accept("=")) {
      s.ctor = call();
      expect(";");
      return s;
    }
    expect("on");
    s.chart = ident("chart name");
    expect("{");
    while (!accept("}")) {
      std::string v = ident("coordinate");
      expect("->");
      s.images.push_back({v, expr()});
      expect(";");
    }
    return s;
  }

  SigmaStmt sigma() {
    SigmaStmt s;
    s.pos = next().pos;
    s.name = ident("sigma name");
    if (accept("=")) {
      s.ctor = call();
      expect(";");
      return s;
    }
    expect("deg");
    s.n = integer("degree");
    expect("pairs");
    expect("{");
    while (!accept("}")) {
      SigmaPairDecl p;
      expect("(");
      p.q = weighted();
      expect(",");
      p.p = weighted();
      expect(")");
      expect(";");
      s.pairs.push_back(p);
    }
    if (accept("derham")) {
      expect("{");
      while (!accept("}")) {
        expect("d");
        derham_entry(s.derham);
      }
    }
    return s;
  }

  HamStmt ham() {
    HamStmt s;
    s.pos = next().pos;
    s.name = ident("hamiltonian name");
    expect("on");
    s.sigma = ident("sigma name");
    expect("=");
    if (is("bivector") && peek(1).text == "{") {
      i_ += 2;
      while (!accept("}")) {
        BivectorEntry b;
        expect("(");
        b.a = ident("coordinate");
        expect(",");
        b.b = ident("coordinate");
        expect(")");
        expect(":");
        b.value = expr();
        expect(";");
        s.bivector.push_back(std::move(b));
      }
      return s;
    }
    if (is("courant") && (peek(1).text == ";" || peek(1).text == "twist")) {
      ++i_;
      s.courant = true;
      if (accept("twist")) s.expr = expr();
      expect(";");
      return s;
    }
    s.expr = expr();
    expect(";");
    return s;
  }

  IndexedExpr indexed(std::size_t arity) {
    IndexedExpr e;
    expect("(");
    for (std::size_t k = 0; k < arity; ++k) {
      if (k) expect(",");
      e.index.push_back(integer("index"));
    }
    expect(")");
    expect("=");
    e.value = expr();
    expect(";");
    return e;
  }

  AlgebroidStmt algebroid() {
    AlgebroidStmt s;
    s.pos = next().pos;
    s.name = ident("algebroid name");
    expect("base");
    s.base = integer("base dimension");
    expect("rank");
    s.rank = integer("rank");
    expect("{");
    while (!accept("}")) {
      if (accept("rho")) {
        s.anchor.push_back(indexed(2));
      } else if (accept("c")) {
        s.structure.push_back(indexed(3));
      } else {
        fail("'rho' or 'c'");
      }
    }
    return s;
  }

  AlgebraStmt algebra() {
    AlgebraStmt s;
    s.pos = next().pos;
    s.name = ident("algebra name");
    if (accept("=")) {
      s.ctor = call();
      expect(";");
      return s;
    }
    expect("dim");
    s.dim = integer("dimension");
    expect("{");
    while (!accept("}")) {
      if (accept("metric")) {
        expect("{");
        while (!accept("}")) {
          s.metric.push_back(atom_list(";"));
          expect(";");
        }
        continue;
      }
      BracketEntry b;
      expect("[");
      b.i = integer("basis index");
      expect(",");
      b.j = integer("basis index");
      expect("]");
      expect("=");
      b.value = atom_list(";");
      expect(";");
      s.brackets.push_back(std::move(b));
    }
    return s;
  }

  TwistStmt twist() {
    TwistStmt s;
    s.pos = next().pos;
    s.name = ident("twist name");
    expect("base");
    s.base = integer("base dimension");
    expect("deg");
    s.n = integer("degree");
    expect("=");
    s.eta = expr();
    expect(";");
    return s;
  }

  PairStmt pair() {
    PairStmt s;
    s.pos = next().pos;
    s.name = ident("pair name");
    expect("base");
    s.base = integer("base dimension");
    expect("deg");
    s.n = integer("degree");
    expect("=");
    expect("(");
    expect("[");
    if (!is("]")) {
      s.v.push_back(expr());
      while (accept(",")) s.v.push_back(expr());
    }
    expect("]");
    expect(",");
    s.alpha = expr();
    expect(")");
    expect(";");
    return s;
  }

  PathStmt path() {
    PathStmt s;
    s.pos = next().pos;
    s.name = ident("path name");
    if (accept("=")) {
      s.ctor = call();
      expect(";");
      return s;
    }
    expect("dim");
    s.dim = integer("dimension");
    expect("{");
    while (!accept("}")) {
      PathSample p;
      p.t = atom();
      expect(":");
      p.a = atom_list(";");
      if (accept("|")) p.base = atom_list(";");
      expect(";");
      s.samples.push_back(std::move(p));
    }
    return s;
  }

  ObjectStmt object() {
    ObjectStmt s;
    s.pos = peek().pos;
    s.kind = next().text == "complex" ? ObjectStmt::Kind::Complex : ObjectStmt::Kind::GridMap;
    s.name = ident("name");
    expect("=");
    s.ctor = call();
    expect(";");
    return s;
  }

  NMapStmt nmap() {
    NMapStmt s;
    s.pos = next().pos;
    s.name = ident("nmap name");
    expect("=");
    s.sigma = ident("sigma name");
    expect("deg");
    s.n = integer("degree");
    expect(";");
    return s;
  }

  LoadStmt load() {
    LoadStmt s;
    s.pos = next().pos;
    s.kind = ident("'complex', 'path' or 'gridmap'");
    if (s.kind != "complex" && s.kind != "path" && s.kind != "gridmap")
      throw SyntaxError(s.pos, "expected 'complex', 'path' or 'gridmap' after load, found '" + s.kind + "'");
    s.name = ident("name");
    if (peek().kind != Token::String) fail("file name string");
    s.file = next().text;
    expect(";");
    return s;
  }

  CheckStmt check() {
    CheckStmt s;
    s.pos = next().pos;
    // Check names may contain '-' with no surrounding spaces.
    s.check = ident("check name");
    while (is("-") && !peek().spaced && peek(1).kind == Token::Ident && !peek(1).spaced) {
      ++i_;
      s.check += "-" + next().text;
    }
    while (!is(";") && !is("=") && !(is("expect") && peek(1).text == "fail")) {
      if (peek().kind == Token::End) fail("';'");
      s.args.push_back(atom());
    }
    if (accept("=")) s.expected = expr();
    if (accept("expect")) {
      expect("fail");
      s.expect_fail = true;
    }
    expect(";");
    return s;
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_expr(std::ostream& os, const Expr& e) {
  auto sub = [&](const Expr& k, int min_prec) {
    if (precedence(k) < min_prec) {
      os << "(";
      print_expr(os, k);
      os << ")";
    } else {
      print_expr(os, k);
    }
  };
  switch (e.kind) {
    case Expr::Kind::Num:
    case Expr::Kind::Var:
      os << e.text;
      break;
    case Expr::Kind::Add:
      sub(e.kids[0], 1);
      os << " + ";
      sub(e.kids[1], 2);
      break;
    case Expr::Kind::Sub:
      sub(e.kids[0], 1);
      os << " - ";
      sub(e.kids[1], 2);
      break;
    case Expr::Kind::Mul:
      sub(e.kids[0], 2);
      os << "*";
      sub(e.kids[1], 3);
      break;
    case Expr::Kind::Div:
      sub(e.kids[0], 2);
      os << "/" << e.kids[1].text;
      break;
    case Expr::Kind::Neg:
      os << "-";
      sub(e.kids[0], 3);
      break;
    case Expr::Kind::Pow:
      sub(e.kids[0], 5);
      os << "^" << e.text;
      break;
    case Expr::Kind::D:
      os << "d(";
      print_expr(os, e.kids[0]);
      os << ")";
      break;
  }
}

std::string atom_text(const Atom& a) { return a.kind == Atom::Kind::String ? "\"" + a.text + "\"" : a.text; }

std::string atoms(const std::vector<Atom>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + atom_text(v[i]);
  return out;
}

std::string call_text(const Call& c) { return c.parens ? c.name + "(" + atoms(c.args) + ")" : c.name; }

std::string weighted_text(const Weighted& w) { return w.name + ":" + std::to_string(w.weight); }

struct Printer {
  std::ostream& os;

  void derham(const std::vector<std::pair<std::string, std::string>>& d) {
    for (const auto& [x, xi] : d) os << " d(" << x << ") = " << xi << ";";
  }

  void operator()(const ChartStmt& s) {
    os << "chart " << s.name;
    if (s.ctor) {
      os << " = " << call_text(*s.ctor) << ";";
      return;
    }
    os << " {";
    for (const auto& v : s.vars) os << " " << weighted_text(v) << ";";
    derham(s.derham);
    os << " }";
  }
  void operator()(const QFieldStmt& s) {
    os << "qfield " << s.name;
    if (s.ctor) {
      os << " = " << call_text(*s.ctor) << ";";
      return;
    }
    os << " on " << s.chart << " {";
    for (const auto& [v, e] : s.images) os << " " << v << " -> " << print(e) << ";";
    os << " }";
  }
  void operator()(const SigmaStmt& s) {
    os << "sigma " << s.name;
    if (s.ctor) {
      os << " = " << call_text(*s.ctor) << ";";
      return;
    }
    os << " deg " << s.n << " pairs {";
    for (const auto& p : s.pairs) os << " (" << weighted_text(p.q) << ", " << weighted_text(p.p) << ");";
    os << " }";
    if (!s.derham.empty()) {
      os << " derham {";
      derham(s.derham);
      os << " }";
    }
  }
  void operator()(const HamStmt& s) {
    os << "ham " << s.name << " on " << s.sigma << " = ";
    if (s.courant) {
      os << "courant";
      if (s.expr) os << " twist " << print(*s.expr);
      os << ";";
      return;
    }
    if (s.expr) {
      os << print(*s.expr) << ";";
      return;
    }
    os << "bivector {";
    for (const auto& b : s.bivector) os << " (" << b.a << ", " << b.b << "): " << print(b.value) << ";";
    os << " }";
  }
  void indexed(const char* head, const IndexedExpr& e) {
    os << " " << head << "(";
    for (std::size_t k = 0; k < e.index.size(); ++k) os << (k ? ", " : "") << e.index[k];
    os << ") = " << print(e.value) << ";";
  }
  void operator()(const AlgebroidStmt& s) {
    os << "algebroid " << s.name << " base " << s.base << " rank " << s.rank << " {";
    for (const auto& e : s.anchor) indexed("rho", e);
    for (const auto& e : s.structure) indexed("c", e);
    os << " }";
  }
  void operator()(const AlgebraStmt& s) {
    os << "algebra " << s.name;
    if (s.ctor) {
      os << " = " << call_text(*s.ctor) << ";";
      return;
    }
    os << " dim " << s.dim << " {";
    for (const auto& b : s.brackets) os << " [" << b.i << ", " << b.j << "] = " << atoms(b.value) << ";";
    if (!s.metric.empty()) {
      os << " metric {";
      for (const auto& row : s.metric) os << " " << atoms(row) << ";";
      os << " }";
    }
    os << " }";
  }
  void operator()(const TwistStmt& s) {
    os << "twist " << s.name << " base " << s.base << " deg " << s.n << " = " << print(s.eta) << ";";
  }
  void operator()(const PairStmt& s) {
    os << "pair " << s.name << " base " << s.base << " deg " << s.n << " = ([";
    for (std::size_t k = 0; k < s.v.size(); ++k) os << (k ? ", " : "") << print(s.v[k]);
    os << "], " << print(s.alpha) << ");";
  }
  void operator()(const PathStmt& s) {
    os << "path " << s.name;
    if (s.ctor) {
      os << " = " << call_text(*s.ctor) << ";";
      return;
    }
    os << " dim " << s.dim << " {";
    for (const auto& p : s.samples) {
      os << " " << atom_text(p.t) << ": " << atoms(p.a);
      if (!p.base.empty()) os << " | " << atoms(p.base);
      os << ";";
    }
    os << " }";
  }
  void operator()(const ObjectStmt& s) {
    os << (s.kind == ObjectStmt::Kind::Complex ? "complex " : "gridmap ") << s.name << " = " << call_text(s.ctor) << ";";
  }
  void operator()(const NMapStmt& s) { os << "nmap " << s.name << " = " << s.sigma << " deg " << s.n << ";"; }
  void operator()(const LoadStmt& s) { os << "load " << s.kind << " " << s.name << " \"" << s.file << "\";"; }
  void operator()(const CheckStmt& s) {
    os << "check " << s.check;
    for (const auto& a : s.args) os << " " << atom_text(a);
    if (s.expected) os << " = " << print(*s.expected);
    if (s.expect_fail) os << " expect fail";
    os << ";";
  }
};

}  // namespace

Program parse(const std::string& source) { return Parser(lex(source)).program(); }

Expr parse_expr(const std::string& source) { return Parser(lex(source)).lone_expr(); }

std::string print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string print(const Statement& s) {
  std::ostringstream os;
  std::visit(Printer{os}, s);
  return os.str();
}

std::string print(const Program& p) {
  std::string out;
  for (const auto& s : p.statements) out += print(s) + "\n";
  return out;
}

Pos position_of(const Statement& s) {
  return std::visit([](const auto& x) { return x.pos; }, s);
}

std::string bound_name(const Statement& s) {
  return std::visit(
      [](const auto& x) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, CheckStmt>) {
          return "";
        } else {
          return x.name;
        }
      },
      s);
}

std::string keyword_of(const Statement& s) {
  static const char* names[] = {"chart", "qfield", "sigma", "ham",  "algebroid", "algebra", "twist",
                                "pair",  "path",   "",      "nmap", "load",      "check"};
  if (const auto* o = std::get_if<ObjectStmt>(&s)) return o->kind == ObjectStmt::Kind::Complex ? "complex" : "gridmap";
  return names[s.index()];
}

}  // namespace gq::dsl
