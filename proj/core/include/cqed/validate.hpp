// validate.hpp — Executable acceptance criteria: reference correlation
// values, flux resonance, spectral structure, confinement, analytic limits,
// classical-bound violations, and oracle equivalence, each reported
// pass/fail with measured numbers.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cqed/lindblad.hpp"

namespace cqed::validate {

struct CheckResult {
    std::string what;
    bool passed{false};
};

struct CriterionResult {
    int id{0};
    std::string name;
    bool passed{false};
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
    double seconds{0.0};
};

struct ValidationOptions {
    std::size_t n_max = 3;          // two-level Fock truncation (criteria assume >= 3)
    std::size_t cesium_n_max = 3;
    lindblad::SteadyStateOptions solver;
};

// Runs all criteria in order; progress lines go to `log` when given.
std::vector<CriterionResult> run_all(const ValidationOptions& opts = {},
                                     std::ostream* log = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

// One line per criterion: "[PASS] 3: flux resonance ..." plus check details.
void print_report(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace cqed::validate
