// errors.hpp — Solver failure types surfaced to callers.

#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive step size fell below the representable minimum (stiff problem).
struct StiffnessError : SolverError {
    StiffnessError(double t, const std::string& msg)
        : SolverError(msg), failing_time(t) {}
    double failing_time;
};

// Trace-replaced steady-state system is (near-)singular: multiple steady states.
struct DegenerateSteadyStateError : SolverError {
    using SolverError::SolverError;
};

// Iterative steady-state solve stopped above the residual gate.
struct NonConvergenceError : SolverError {
    NonConvergenceError(double res, const std::string& msg)
        : SolverError(msg), residual(res) {}
    double residual;
};

// g2 denominator vanishes: the correlation is undefined, not zero.
struct UndefinedCorrelationError : SolverError {
    using SolverError::SolverError;
};

}  // namespace cqed
