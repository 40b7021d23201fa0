#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace massey {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad dimensions, wrong modulus, invalid tables.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InputError {
public:
    DimensionMismatch(const std::string& where, std::size_t expected, std::size_t got)
        : InputError(where + ": dimension mismatch (expected " + std::to_string(expected) + ", got " +
                     std::to_string(got) + ")") {}
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

/// A computation would exceed a configured size limit. Not a mathematical verdict.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::size_t requested, std::size_t budget)
        : Error(what + ": budget exceeded (" + std::to_string(requested) + " > " + std::to_string(budget) + ")"),
          requested_(requested),
          budget_(budget) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t requested_;
    std::size_t budget_;
};

/// A precondition of a mathematical operation does not hold (not a cocycle, not a homomorphism, ...).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

}  // namespace massey
