#pragma once

#include <stdexcept>
#include <string>

namespace tayrem {

// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed expression text. position is a 0-based byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), pos_(position) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

// Evaluation left the mathematical domain (ln of a non-positive value, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Residual scan found no sign change.
class NoRootError : public Error {
public:
    using Error::Error;
};

// An ODE right-hand side is undefined at the reported location.
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double x) : Error(what), x_(x) {}
    double where() const noexcept { return x_; }

private:
    double x_;
};

// Integration produced NaN or infinity.
class NonFiniteError : public Error {
public:
    NonFiniteError(const std::string& what, double x) : Error(what), x_(x) {}
    double where() const noexcept { return x_; }

private:
    double x_;
};

// Trajectories handed to splice do not share a node grid.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

// Evaluation outside the valid interval of a model.
class RangeError : public Error {
public:
    using Error::Error;
};

// Bad configuration file or command usage.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace tayrem
