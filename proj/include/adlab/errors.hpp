#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace adlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, out-of-range parameters.
class InputError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A size guard was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A documented precondition on the input did not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The operation was requested in a situation where it has no meaningful answer.
class LogicError : public Error {
public:
    using Error::Error;
};

/// An iterative solver stopped without converging. Carries the best iterate seen.
class SolverError : public Error {
public:
    SolverError(const std::string& what, std::vector<double> best_iterate = {},
                double residual = 0.0)
        : Error(what), best_iterate_(std::move(best_iterate)), residual_(residual) {}

    const std::vector<double>& best_iterate() const noexcept { return best_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<double> best_iterate_;
    double residual_;
};

/// Numerical integration could not reach the requested tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace adlab
