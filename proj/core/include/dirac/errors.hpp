#ifndef DIRAC_ERRORS_HPP
#define DIRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dirac {

// Base class for all numerical/validation failures raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the mathematical domain of an operation (x outside the
// interval, pole of Gamma, z=-m, ...).
struct DomainError : Error {
    using Error::Error;
};

// Argument on (or across) a branch cut where the principal branch is
// undefined for the requested order/power.
struct BranchError : Error {
    using Error::Error;
};

// Malformed problem descriptions: bad JSON, bad expression syntax,
// violated schema invariants.
struct SpecError : Error {
    using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

// ODE step-size underflow or other integration failure; carries the x
// where stepping broke down.
struct IntegrationError : Error {
    IntegrationError(const std::string& msg, double x) : Error(msg), failing_x(x) {}
    double failing_x;
};

// d'Alembert reduction hit a zero of the pivot component.
struct SingularReductionError : Error {
    using Error::Error;
};

// Truncation/epsilon ladder did not converge.
struct ExtrapolationError : Error {
    using Error::Error;
};

// Neumann iteration or series failed to converge.
struct ConvergenceError : Error {
    using Error::Error;
};

// W(Phi, u+) vanished: z sits (numerically) on the discrete spectrum.
struct PoleSignal : Error {
    using Error::Error;
};

} // namespace dirac

#endif
