#pragma once

// Binding declarations and running checks. A program is executed in two
// passes: every declaration is built and every check is validated first
// (errors raise SemanticError with the statement position), then the checks
// run in order. Failures inside a check become failed records.

#include "gq/dsl_parser.hpp"
#include "gq/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gq::dsl {

struct Options {
  int steps = 1000;          // A-path integration steps
  double tolerance = 1e-6;   // A-path and GridMap residual bound
  std::uint64_t seed = 0;    // random paths and grid maps
  std::string base_dir;      // resolves relative file names in load
};

/// One entry per check name.
struct CheckInfo {
  std::string name;
  std::string usage;
  std::string summary;
  /// Library operations the check exercises.
  std::vector<std::string> operations;
};

const std::vector<CheckInfo>& check_table();

/// Constructor names accepted after '=' per declaration keyword, with the
/// operations they reach.
struct ConstructorInfo {
  std::string keyword;
  std::string name;
  std::vector<std::string> operations;
};
const std::vector<ConstructorInfo>& constructor_table();

/// Statement-level operations reached by declarations without a
/// constructor (chart blocks, load, ...).
const std::vector<ConstructorInfo>& declaration_table();

/// Throws SyntaxError or SemanticError before any check runs.
Report execute(const Program& p, const Options& opt, const std::string& source_name = "");

/// Declarations available to one-shot `gq check` invocations.
const std::string& prelude();

}  // namespace gq::dsl
