#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace capcall {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration text (syntax, unknown or missing keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An input value violates a documented precondition or invariant.
class DomainError : public Error {
public:
    DomainError(std::string field, const std::string& reason)
        : Error(field + ": " + reason), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Failures of the solve pipeline. Callers map all of these to one exit code.
class SolverError : public Error {
public:
    using Error::Error;
};

/// The coupled characteristic quartic does not have the expected root layout.
class RootStructureError : public SolverError {
public:
    using SolverError::SolverError;
};

/// A resolvent of a power function diverges (jᵢ(β) ≤ 0).
class FinitenessError : public SolverError {
public:
    using SolverError::SolverError;
};

/// A geometric construction in transformed space is impossible.
class GeometryError : public SolverError {
public:
    using SolverError::SolverError;
};

/// No threshold satisfies the binding-constraint feasibility predicate.
class InfeasibleError : public SolverError {
public:
    using SolverError::SolverError;
};

/// The assembled value functions break a structural invariant.
class InvariantError : public SolverError {
public:
    using SolverError::SolverError;
};

}  // namespace capcall
