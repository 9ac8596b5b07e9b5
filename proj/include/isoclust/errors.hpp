#pragma once

#include <stdexcept>
#include <string>

namespace isoclust {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the operation's domain (non-positive radius, unknown label, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed cluster: dangling node references, inconsistent labels, non-manifold chamber boundaries.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Iterative solver gave up; carries the last residual.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double last_residual)
        : Error(what), last_residual_(last_residual) {}
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Quadrature refinement budget exhausted; carries the last two estimates.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double previous, double last)
        : Error(what), previous_(previous), last_(last) {}
    double previous_estimate() const noexcept { return previous_; }
    double last_estimate() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

/// Interfaces collided during the flow. No surgery is attempted.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// The multiplier system of the area constraints is singular.
class DegenerateConstraintError : public Error {
public:
    using Error::Error;
};

/// Every retry of a perturbation produced an invalid cluster.
class PerturbationError : public Error {
public:
    using Error::Error;
};

}  // namespace isoclust
