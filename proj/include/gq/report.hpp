#pragma once

// Check records and their text / JSON renderings. The JSON layout is
// described by docs/report.schema.json.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gq::dsl {

enum class Verdict { Pass, Fail, Degraded };

const char* verdict_name(Verdict v);  // "pass", "fail", "degraded-mode"

struct CheckRecord {
  std::string check;
  std::vector<std::string> inputs;
  int line = 0;
  Verdict verdict = Verdict::Pass;
  bool expect_fail = false;
  /// Outcome of the underlying property before applying expect_fail.
  bool holds = true;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::pair<std::string, std::string>> witnesses;
  std::string explanation;
  double time_ms = 0;
};

struct Report {
  std::string source;
  int steps = 0;
  double tolerance = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  std::size_t count(Verdict v) const;
  /// No check failed; degraded-mode checks do not count as failures.
  bool passed() const { return count(Verdict::Fail) == 0; }
};

/// One line per check: "PASS q2 Q (0 ms)".
std::string render_text(const Report& r);
/// Stable key order. Timing is included only when asked for, so that
/// reports are byte-identical across runs.
std::string render_json(const Report& r, bool timing = false);

}  // namespace gq::dsl
