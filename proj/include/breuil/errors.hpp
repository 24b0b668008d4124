#pragma once

#include <stdexcept>
#include <string>

namespace breuil {

// Bad user-supplied data: malformed JSON, weights out of range, non-invertible
// Frobenius matrix, precision budget violations requested at the interface.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal identity or congruence that the theory guarantees failed to hold
// (division not exact, pivot not a unit, verified congruence violated).
struct computation_error : std::runtime_error {
    explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

// The gauge iteration hit its step cap without stabilizing.
struct no_convergence : std::runtime_error {
    explicit no_convergence(const std::string& what) : std::runtime_error(what) {}
};

} // namespace breuil
