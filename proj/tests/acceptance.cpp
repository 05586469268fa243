// Runs every verification criterion at the default configuration and prints
// one PASS/FAIL line per criterion. Exit status is nonzero on any failure.
#include <cstdio>
#include <string>

#include "pseudohyp/emit.hpp"
#include "pseudohyp/verify.hpp"

using namespace pseudohyp;

namespace {

int failures = 0;

void line(bool ok, const std::string& label, const std::string& detail) {
  std::printf("%s  %s  %s\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
  if (!ok) ++failures;
}

}  // namespace

int main() {
  const Config cfg;
  std::vector<CriterionResult> results;
  for (const auto& spec : criterion_table()) {
    const auto r = run_criterion(spec, cfg);
    results.push_back(r);
    for (const auto& c : r.checks)
      if (!c.pass)
        std::printf("      failing check %s: measured %s target %s tol %s (%s)\n", c.name.c_str(),
                    fmt_double(c.measured).c_str(), fmt_double(c.target).c_str(), fmt_double(c.tolerance).c_str(),
                    to_string(c.kind));
    std::string detail = std::to_string(r.checks.size()) + " checks, " + fmt_double(r.seconds) + " s";
    if (!r.error.empty()) detail += ", error: " + r.error;
    const bool in_budget = r.seconds <= spec.budget_seconds;
    if (!in_budget) detail += ", over budget " + fmt_double(spec.budget_seconds) + " s";
    line(r.pass && in_budget, "criterion " + std::to_string(spec.id) + " (" + spec.title + ")", detail);
  }

  const auto j = summary_json(cfg, results);
  if (j.contains("tits_perimeter_N2")) {
    const auto& t = j["tits_perimeter_N2"];
    line(t["pass"].get<bool>(), "tits perimeter N=2 on the grid",
         "measured " + fmt_double(t["measured"].get<double>()) + " target " + fmt_double(t["target"].get<double>()) + " rel tol " +
             fmt_double(t["tolerance_rel"].get<double>()));
  } else {
    line(false, "tits perimeter N=2 on the grid", "value missing");
  }

  // rerunning with the same seed must give a byte-identical summary
  std::vector<CriterionResult> again;
  for (const auto& spec : criterion_table()) again.push_back(run_criterion(spec, cfg));
  line(summary_json(cfg, again).dump(2) == j.dump(2), "criterion 13 (determinism)", "summary JSON compared byte for byte");

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
