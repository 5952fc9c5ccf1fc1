// gq: run declaration files and one-shot checks.
//
//   gq run FILE [--report out.json] [--steps N] [--tolerance T] [--seed S] [--timing]
//   gq check NAME ARGS... [--with FILE]
//   gq fmt FILE
//   gq list
//
// Exit status: 0 all checks pass, 1 some check failed, 2 parse or semantic error.

#include "gq/dsl_parser.hpp"
#include "gq/dsl_session.hpp"
#include "gq/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gq::dsl;

bool slurp(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int run_program(const std::string& source, const std::string& label, const Options& opt,
                const std::string& report_path, bool timing) {
  try {
    Report r = execute(parse(source), opt, label);
    std::cout << render_text(r);
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) {
        std::cerr << "gq: cannot write " << report_path << "\n";
        return 2;
      }
      out << render_json(r, timing);
    }
    return r.passed() ? 0 : 1;
  } catch (const SyntaxError& e) {
    std::cerr << label << ":" << e.what() << "\n";
  } catch (const SemanticError& e) {
    std::cerr << label << ":" << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << label << ": error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded manifold checks"};
  app.require_subcommand(1);

  Options opt;
  std::string file, report, with;
  bool timing = false;

  auto* run = app.add_subcommand("run", "run a declaration file");
  run->add_option("file", file, "program")->required();
  run->add_option("--report", report, "write a JSON report");
  run->add_option("--steps", opt.steps, "A-path integration steps")->check(CLI::PositiveNumber);
  run->add_option("--tolerance", opt.tolerance, "numerical tolerance")->check(CLI::PositiveNumber);
  run->add_option("--seed", opt.seed, "seed for random paths and grid maps");
  run->add_flag("--timing", timing, "include per-check time in the JSON report");

  std::vector<std::string> words;
  auto* check = app.add_subcommand("check", "run one check against the prelude");
  check->add_option("words", words, "check name and arguments")->required();
  check->add_option("--with", with, "extra declarations loaded after the prelude");
  check->add_option("--steps", opt.steps, "A-path integration steps")->check(CLI::PositiveNumber);
  check->add_option("--tolerance", opt.tolerance, "numerical tolerance")->check(CLI::PositiveNumber);
  check->add_option("--seed", opt.seed, "seed for random paths and grid maps");
  check->add_option("--report", report, "write a JSON report");

  auto* fmt = app.add_subcommand("fmt", "print a program in canonical form");
  fmt->add_option("file", file, "program")->required();

  auto* list = app.add_subcommand("list", "list check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*list) {
    for (const auto& c : check_table()) std::cout << c.usage << "\n    " << c.summary << "\n";
    return 0;
  }

  if (*run || *fmt) {
    std::string source;
    if (!slurp(file, source)) {
      std::cerr << "gq: cannot read " << file << "\n";
      return 2;
    }
    if (*fmt) {
      try {
        std::cout << print(parse(source));
        return 0;
      } catch (const SyntaxError& e) {
        std::cerr << file << ":" << e.what() << "\n";
        return 2;
      }
    }
    opt.base_dir = std::filesystem::path(file).parent_path().string();
    return run_program(source, file, opt, report, timing);
  }

  std::string source = prelude();
  if (!with.empty()) {
    std::string extra;
    if (!slurp(with, extra)) {
      std::cerr << "gq: cannot read " << with << "\n";
      return 2;
    }
    opt.base_dir = std::filesystem::path(with).parent_path().string();
    source += extra + "\n";
  }
  source += "check";
  for (const auto& w : words) source += " " + w;
  source += ";\n";
  return run_program(source, "<check>", opt, report, false);
}
