#ifndef POVKIT_ERRORS_HPP
#define POVKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace povkit {

/// Base class for all povkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or inputs (bad index parameter, bad model parameter, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A GPI configuration that cannot be evaluated (B <= 0, negative weight argument, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A computation that is undefined for the given data (g undefined, degenerate
/// censored mean, degenerate poverty line, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed specification strings (model specs, format names, config JSON).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Malformed data files (CSV rows, unreadable paths).
class DataError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature ran out of budget. Carries the best estimate reached
/// and the error bound actually achieved.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_estimate, double achieved_tol)
        : Error(what), best_estimate(best_estimate), achieved_tol(achieved_tol) {}

    double best_estimate;
    double achieved_tol;
};

} // namespace povkit

#endif
