#include <doctest.h>

#include "gq/dsl_parser.hpp"
#include "gq/dsl_session.hpp"
#include "gq/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

using namespace gq::dsl;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> programs() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(GQ_VERIFICATION_DIR))
    if (e.path().extension() == ".gq") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Report run(const std::string& src, const std::string& name = "t.gq") {
  Options opt;
  opt.base_dir = GQ_VERIFICATION_DIR;
  return execute(parse(src), opt, name);
}

template <class E>
E error_of(const std::string& src) {
  try {
    run(src);
  } catch (const E& e) {
    return e;
  }
  FAIL("no error raised for: " << src);
  return E({}, "");
}

// Key under which a statement appears in the constructor or declaration table.
std::pair<std::string, std::string> form_of(const Statement& s) {
  const std::string kw = keyword_of(s);
  return std::visit(
      [&](const auto& st) -> std::pair<std::string, std::string> {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, ChartStmt> || std::is_same_v<T, QFieldStmt> ||
                      std::is_same_v<T, SigmaStmt> || std::is_same_v<T, AlgebraStmt> ||
                      std::is_same_v<T, PathStmt>) {
          if (st.ctor) return {kw, st.ctor->name};
          return {kw, "{...}"};
        } else if constexpr (std::is_same_v<T, ObjectStmt>) {
          return {kw, st.ctor.name};
        } else if constexpr (std::is_same_v<T, HamStmt>) {
          if (st.courant) return {kw, "courant"};
          return {kw, st.expr ? "= expr" : "bivector"};
        } else if constexpr (std::is_same_v<T, AlgebroidStmt>) {
          return {kw, "{...}"};
        } else if constexpr (std::is_same_v<T, TwistStmt>) {
          return {kw, "= expr"};
        } else if constexpr (std::is_same_v<T, PairStmt>) {
          return {kw, "(v, alpha)"};
        } else if constexpr (std::is_same_v<T, NMapStmt>) {
          return {kw, "= sigma deg n"};
        } else if constexpr (std::is_same_v<T, LoadStmt>) {
          return {kw, st.kind};
        } else {
          return {"check", st.check};
        }
      },
      s);
}

// Public operations of the library modules that programs must be able to reach.
const std::set<std::string> kOperations = {
    // graded_algebra
    "Chart::make", "Chart::tangent_shifted", "GPoly", "scaling_check",
    // nq_core
    "Derivation", "apply", "commutator", "q_square", "is_nq", "euler_field", "de_rham_q", "de_rham",
    "manifold_degree",
    // sigma_structures
    "DarbouxChart", "DarbouxChart::cotangent1", "DarbouxChart::standard_courant", "poisson_bracket",
    "hamiltonian_to_q", "is_symplectic", "q_to_hamiltonian", "master_equation", "derived_bracket",
    "lambda_check", "poisson_hamiltonian", "courant_hamiltonian", "AlgebroidData::validate", "algebroid_chart",
    "algebroid_to_q", "q_to_algebroid",
    // extensions
    "TwistData", "twisted_q", "gauge_change", "gauge_shift_intertwines", "jacobi_violation",
    "QuadraticLieAlgebra", "QuadraticLieAlgebra::so3", "QuadraticLieAlgebra::sl2",
    "QuadraticLieAlgebra::abelian", "metric_is_invariant", "chevalley_eilenberg_q", "cartan_3form",
    "GradedLieAlgebra::jacobi_violation", "GradedLieAlgebra::derivation_violation", "central_extension",
    "affine_cocycle_check", "SymmetryPair::validate", "symmetry_chart", "interior", "iota_encode",
    "iota_decode", "symmetry_bracket", "contraction", "symmetry_q", "find_nonskew_witness",
    // apath_integrator
    "APath", "APath::constant", "APath::read", "APath::load", "integrate", "concatenate", "reverse",
    "reparametrize_check", "action_integrate", "anchor_residual", "orthogonality_residual",
    "determinant_residual", "GridMap", "GridMap::sample", "GridMap::read", "GridMap::load", "quat_exp",
    "quat_log", "su2_cartan", "cross_term", "wzw_product", "wzw_associativity", "cross_term_defect",
    // symplectic_complexes
    "cohomology", "SymplecticComplex::compatibility_violation", "cohomology_pairing", "RelativeComplex",
    "lemma3_orthogonality", "relative_pairing", "boundary_lagrangian", "tensor", "double_complex",
    "suspension_check", "relative_cube", "nmap_space", "read_complex", "load_complex", "lattice_model",
    "simplicial_model", "Simplicial2::grid", "interval_cup_model", "interval_model", "point_complex",
};

std::string normalize_timing(const std::string& s) {
  return std::regex_replace(s, std::regex(R"(\([0-9]+ ms\))"), "(0 ms)");
}

int cli(const std::string& args) {
  const int status = std::system((std::string(GQ_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path temp_program(const std::string& name, const std::string& body) {
  fs::path p = fs::temp_directory_path() / ("gq_unit_" + name + ".gq");
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_SUITE("dsl_cli") {
  TEST_CASE("pretty print then reparse is the identity") {
    std::vector<std::string> sources{prelude()};
    for (const auto& p : programs()) sources.push_back(slurp(p));
    for (const auto& src : sources) {
      Program p = parse(src);
      const std::string text = print(p);
      CHECK(parse(text) == p);
      CHECK(print(parse(text)) == text);
    }
  }

  TEST_CASE("expressions print with minimal parentheses and reparse") {
    for (const char* e : {"x*(y + z)", "-(a - b)^2", "d(x*xi) + 1/2*y", "(x - y) - z", "x - (y - z)"}) {
      Expr ex = parse_expr(e);
      CHECK(parse_expr(print(ex)) == ex);
    }
    CHECK(print(parse_expr("(x - y) - z")) == "x - y - z");
    CHECK(print(parse_expr("x - (y - z)")) == "x - (y - z)");
  }

  TEST_CASE("negative weights are semantic errors") {
    SemanticError e = error_of<SemanticError>("chart X { x:-1; }");
    CHECK(std::string(e.what()).find("negative weight") != std::string::npos);
    CHECK(e.pos.line == 1);
  }

  TEST_CASE("semantic errors carry positions") {
    SemanticError unknown = error_of<SemanticError>("chart T = tangent(1);\ncheck q2 Nope;");
    CHECK(unknown.pos.line == 2);
    CHECK(std::string(unknown.what()).find("Nope") != std::string::npos);

    SemanticError dup = error_of<SemanticError>("chart T = tangent(1);\nchart T = tangent(2);");
    CHECK(dup.pos.line == 2);

    SemanticError weight = error_of<SemanticError>("chart X { x:0; e:1; }\nqfield Q on X { x -> x; }");
    CHECK(weight.pos.line == 2);

    SemanticError kind = error_of<SemanticError>("chart T = tangent(1);\ncheck lemma3 T;");
    CHECK(std::string(kind.what()).find("T") != std::string::npos);

    SemanticError usage = error_of<SemanticError>("chart T = tangent(1);\nqfield Q = derham(T);\ncheck q2;");
    CHECK(usage.pos.line == 3);

    error_of<SemanticError>("sigma S = courant(2);\nham H on S = courant twist theta1*theta2;");
    error_of<SemanticError>("chart point = tangent(1);");
  }

  TEST_CASE("syntax errors carry positions") {
    SyntaxError e = error_of<SyntaxError>("chart X { x:0 }");
    CHECK(e.pos.line == 1);
    CHECK(e.pos.col == 15);
    SyntaxError f = error_of<SyntaxError>("\n\n  check q2 Q");
    CHECK(f.pos.line == 3);
    CHECK_THROWS_AS(parse("frobnicate X;"), SyntaxError);
  }

  TEST_CASE("every table entry is exercised by the verification suite") {
    std::set<std::string> checks;
    std::set<std::pair<std::string, std::string>> forms;
    for (const auto& p : programs())
      for (const auto& s : parse(slurp(p)).statements) {
        auto f = form_of(s);
        if (f.first == "check")
          checks.insert(f.second);
        else
          forms.insert(f);
      }
    std::set<std::string> reached;
    for (const auto& c : check_table()) {
      CHECK_MESSAGE(checks.count(c.name), "check never run: " << c.name);
      reached.insert(c.operations.begin(), c.operations.end());
    }
    for (const auto* table : {&constructor_table(), &declaration_table()})
      for (const auto& c : *table) {
        CHECK_MESSAGE(forms.count({c.keyword, c.name}), "form never used: " << c.keyword << " " << c.name);
        reached.insert(c.operations.begin(), c.operations.end());
      }
    for (const auto& op : kOperations) CHECK_MESSAGE(reached.count(op), "unreachable: " << op);
    for (const auto& op : reached) CHECK_MESSAGE(kOperations.count(op), "undocumented operation: " << op);
    for (const char* name : {"q2", "master", "jacobi", "dirac", "lemma1", "lemma3", "stokes",
                             "boundary-lagrangian", "cocycle", "holonomy", "reparam"})
      CHECK(checks.count(name));
  }

  TEST_CASE("golden: failing master equation") {
    const fs::path dir = fs::path(GQ_SOURCE_DIR) / "tests" / "golden";
    Report r = run(slurp(dir / "master_fail.gq"), "master_fail.gq");
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].verdict == Verdict::Fail);
    // Jacobiator of pi^{12} = x1, pi^{23} = x2 is x1.
    REQUIRE(r.checks[0].witnesses.size() == 1);
    CHECK(r.checks[0].witnesses[0].second.find("x1*p1*p2*p3") != std::string::npos);
    CHECK(render_json(r) == slurp(dir / "master_fail.json"));
    CHECK(normalize_timing(render_text(r)) == slurp(dir / "master_fail.txt"));
  }

  TEST_CASE("golden: degraded Lemma 3") {
    const fs::path dir = fs::path(GQ_SOURCE_DIR) / "tests" / "golden";
    Report r = run(slurp(dir / "lemma3_degraded.gq"), "lemma3_degraded.gq");
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].verdict == Verdict::Degraded);
    CHECK(std::string(verdict_name(r.checks[0].verdict)) == "degraded-mode");
    CHECK_FALSE(r.checks[0].explanation.empty());
    CHECK(r.passed());
    CHECK(render_json(r) == slurp(dir / "lemma3_degraded.json"));
    CHECK(normalize_timing(render_text(r)) == slurp(dir / "lemma3_degraded.txt"));
  }

  TEST_CASE("text line shape") {
    Report r = run("chart T = tangent(2);\nqfield Q = derham(T);\ncheck q2 Q;\n");
    const std::string text = render_text(r);
    CHECK(std::regex_search(text, std::regex(R"(^PASS q2 Q \([0-9]+ ms\)\n)")));
    CHECK(normalize_timing(text).rfind("PASS q2 Q (0 ms)\n", 0) == 0);
  }

  TEST_CASE("expect fail inverts the verdict") {
    const std::string bad = "chart Z { z:0; e:1; f:1; }\nqfield B on Z { z -> e; e -> z*e*f; f -> e*f; }\n";
    CHECK(run(bad + "check q2 B;").checks[0].verdict == Verdict::Fail);
    CHECK(run(bad + "check q2 B expect fail;").checks[0].verdict == Verdict::Pass);
    Report wrong = run("chart T = tangent(1);\nqfield Q = derham(T);\ncheck q2 Q expect fail;");
    CHECK(wrong.checks[0].verdict == Verdict::Fail);
    CHECK_FALSE(wrong.passed());
  }

  TEST_CASE("JSON reports are deterministic without timing") {
    const std::string src = slurp(fs::path(GQ_VERIFICATION_DIR) / "apaths.gq");
    Report a = run(src), b = run(src);
    CHECK(render_json(a) == render_json(b));
    CHECK(render_json(a).find("time_ms") == std::string::npos);
    CHECK(render_json(a, true).find("time_ms") != std::string::npos);
  }

  TEST_CASE("command line exit codes") {
    CHECK(cli("run " + temp_program("neg", "chart X { x:-1; }\n").string()) == 2);
    CHECK(cli("run " + temp_program("syntax", "chart X { x:0 }\n").string()) == 2);
    CHECK(cli("run " + temp_program("fail", "chart T = tangent(1);\nqfield Q = derham(T);\ncheck q2 Q expect fail;\n").string()) == 1);
    CHECK(cli("run " + temp_program("ok", "chart T = tangent(1);\nqfield Q = derham(T);\ncheck q2 Q;\n").string()) == 0);
    CHECK(cli("run /nonexistent/file.gq") == 2);
    CHECK(cli("check q2 dR3") == 0);
    CHECK(cli("check lemma3 torus33") == 0);
    CHECK(cli("check nosuchcheck dR3") == 2);
    CHECK(cli("check master TC3 --seed 4 --steps 10") == 0);
  }
}
