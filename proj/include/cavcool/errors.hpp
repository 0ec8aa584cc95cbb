#pragma once

#include <stdexcept>
#include <string>

// Error hierarchy.  Everything thrown by the library derives from
// cavcool::Error so callers can catch library failures in one place while
// still distinguishing bad input (DomainError), physically inadmissible
// requests (PhysicsError), linear-algebra breakdowns (SolverError), and
// results that failed their internal convergence check (DiagnosticError).

namespace cavcool {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or malformed input (bad config key, negative power, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested state is physically inadmissible (saturation budget
/// exceeded, heating instead of cooling when a temperature is demanded, ...).
class PhysicsError : public Error {
public:
    using Error::Error;
};

/// The linear solve is singular or otherwise numerically unusable.
class SolverError : public Error {
public:
    using Error::Error;
};

/// A result was computed but failed its self-consistency check.  Carries the
/// two disagreeing estimates so callers can judge how bad the failure is.
class DiagnosticError : public Error {
public:
    DiagnosticError(const std::string& what, double first, double second)
        : Error(what), first_estimate(first), second_estimate(second) {}

    double first_estimate;
    double second_estimate;
};

} // namespace cavcool
