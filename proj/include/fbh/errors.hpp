#pragma once

#include <stdexcept>
#include <string>

namespace fbh {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Vector or matrix sizes inconsistent with the domain parameters.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A mathematical precondition was violated: exterior point, non-unit
// direction, non-unitary matrix, branch value, degree cap, ...
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A series or quadrature left its convergence region or exhausted its
// iteration budget before reaching the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace fbh
