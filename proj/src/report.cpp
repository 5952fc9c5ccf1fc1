#include "gq/report.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace gq::dsl {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Degraded:
      return "degraded-mode";
  }
  return "fail";
}

std::size_t Report::count(Verdict v) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.verdict == v;
  return n;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    const char* tag = c.verdict == Verdict::Pass ? "PASS" : c.verdict == Verdict::Fail ? "FAIL" : "DEGRADED";
    os << tag << " " << c.check;
    for (const auto& in : c.inputs) os << " " << in;
    os << " (" << std::llround(c.time_ms) << " ms)";
    if (c.expect_fail) os << " [expected failure]";
    if (c.verdict != Verdict::Pass && !c.explanation.empty()) {
      std::string e = c.explanation;
      while (!e.empty() && e.back() == '\n') e.pop_back();
      for (std::size_t i = 0; (i = e.find('\n', i)) != std::string::npos;) e.replace(i, 1, "; ");
      os << ": " << e;
    }
    os << "\n";
  }
  os << r.count(Verdict::Pass) << " passed, " << r.count(Verdict::Fail) << " failed, "
     << r.count(Verdict::Degraded) << " degraded\n";
  return os.str();
}

std::string render_json(const Report& r, bool timing) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "gq-report/1";
  j["source"] = r.source;
  j["options"] = {{"steps", r.steps}, {"tolerance", r.tolerance}, {"seed", r.seed}};
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json o;
    o["check"] = c.check;
    o["inputs"] = c.inputs;
    o["line"] = c.line;
    o["verdict"] = verdict_name(c.verdict);
    o["expect_fail"] = c.expect_fail;
    o["holds"] = c.holds;
    ordered_json res = ordered_json::object();
    for (const auto& [k, v] : c.residuals) res[k] = std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
    o["residuals"] = res;
    ordered_json wit = ordered_json::object();
    for (const auto& [k, v] : c.witnesses) wit[k] = v;
    o["witnesses"] = wit;
    o["explanation"] = c.explanation;
    if (timing) o["time_ms"] = c.time_ms;
    checks.push_back(std::move(o));
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"passed", r.count(Verdict::Pass)},
                  {"failed", r.count(Verdict::Fail)},
                  {"degraded", r.count(Verdict::Degraded)}};
  return j.dump(2) + "\n";
}

}  // namespace gq::dsl
