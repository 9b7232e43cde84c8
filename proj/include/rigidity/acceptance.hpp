#pragma once

#include <string>
#include <vector>

#include "rigidity/report.hpp"

namespace rigidity::acceptance {

// Runs the numerical verification suite. `only` filters by group name
// (gamma, eps, curves, series, profile, coeff, rigidity, minoo); empty runs
// everything.
std::vector<report::CheckResult> run_checks(const std::string& only = "");

nlohmann::ordered_json make_report(const std::vector<report::CheckResult>& checks,
                                   const std::string& only);

// Runs the suite twice, appends the report-determinism check (byte-identical
// serializations), and returns the full check list.
std::vector<report::CheckResult> run_with_determinism(const std::string& only = "");

}  // namespace rigidity::acceptance
