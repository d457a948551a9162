#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fabkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RegistryMismatch : public Error {
public:
    RegistryMismatch() : Error("polynomials live on different variable registries") {}
};

class CoefficientOverflow : public Error {
public:
    CoefficientOverflow() : Error("integer coefficient overflow") {}
};

class NotDivisible : public Error {
public:
    using Error::Error;
    NotDivisible() : Error("exact division failed") {}
};

class ExponentOffGrid : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class InvalidCell : public Error {
public:
    using Error::Error;
};

class DegenerateDiagram : public Error {
public:
    using Error::Error;
};

class AxialMismatch : public Error {
public:
    using Error::Error;
};

class ClosedComponents : public Error {
public:
    using Error::Error;
};

class MultipleYarns : public Error {
public:
    using Error::Error;
};

// The multivariate factorizer refuses inputs whose Kronecker image is too long.
class FactorLimit : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace fabkit
