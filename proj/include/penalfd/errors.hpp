#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace penalfd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input to an operation (bad parameter, config/scheme mismatch).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A configuration failed one or more validation rules.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Evaluation outside the domain of a formula (disk center, Bessel range,
// unsupported characteristic region).
class DomainError : public Error {
public:
    using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

// Boundary-layer estimator needs RU(h) in (0,1).
class EstimatorDomainError : public DomainError {
public:
    EstimatorDomainError(const std::string& what, double ratio)
        : DomainError(what), ratio_(ratio) {}
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, std::size_t iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}
    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace penalfd
