#pragma once
#include <stdexcept>
#include <string>

namespace uckl {

// Invalid mathematical input (parameter out of range, excluded point, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Kernel evaluated on its diagonal x == y.
struct SingularityError : DomainError {
    explicit SingularityError(const std::string& what) : DomainError(what) {}
};

// Operation outside the implemented envelope (e.g. direct oracle beyond N = 3).
struct UnsupportedError : DomainError {
    explicit UnsupportedError(const std::string& what) : DomainError(what) {}
};

// Grid resolution would exceed the configured point cap.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Iteration budget exhausted; carries the best estimate reached.
struct NonConvergenceError : std::runtime_error {
    double best;
    double residual;
    int iterations;
    NonConvergenceError(const std::string& what, double best_, double residual_, int iterations_)
        : std::runtime_error(what), best(best_), residual(residual_), iterations(iterations_) {}
};

} // namespace uckl
