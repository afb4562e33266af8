#pragma once

#include <stdexcept>
#include <string>

namespace helstrom {

// Invalid or inconsistent input: bad model files, malformed instances,
// out-of-range parameters. Maps to CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A computation that should have succeeded did not: solver iteration caps,
// residual checks failing, non-convergence. Maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace helstrom
