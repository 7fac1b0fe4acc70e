#pragma once

#include <stdexcept>
#include <string>

namespace ats {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative solver ran out of iterations; carries the last residual seen.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace ats
