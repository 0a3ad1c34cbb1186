#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wnls::verify {

/// One verification criterion: pass/fail plus the measured constants that
/// back the verdict.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;   // measured constants, thresholds
    double seconds = 0.0; // wall time
    double budget = 0.0;  // runtime budget, seconds (0 = none)
};

enum class Suite { spectral, conservation, morawetz, scattering, all };

/// Parses a suite name; throws std::invalid_argument for unknown names.
Suite suite_from_name(const std::string& name);

/// Runs the named suite, printing one pass/fail line per criterion to out.
/// Individual failures do not stop the suite.
std::vector<CheckResult> run_suite(Suite suite, std::ostream& out);

/// True iff every result passed (including runtime budgets).
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace wnls::verify
