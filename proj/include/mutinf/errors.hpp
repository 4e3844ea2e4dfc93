#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mutinf {

// Base type for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed user input: bad shapes, negative counts, unparsable files/flags.
struct InputError : Error {
    using Error::Error;
};

// Structurally valid input outside a formula's mathematical domain
// (zero cells, nonpositive special-function arguments, infeasible fits).
struct DomainError : Error {
    using Error::Error;
};

// An iterative solver ran out of iterations. Carries the objective trace
// so callers can inspect what happened.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, std::vector<double> trace, double residual)
        : Error(what), trace(std::move(trace)), final_residual(residual) {}

    std::vector<double> trace;
    double final_residual = 0.0;
};

}  // namespace mutinf
