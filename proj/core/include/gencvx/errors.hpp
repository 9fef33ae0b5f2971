#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gencvx {

// Raised by the expression evaluator for log/sqrt out of range and
// division by zero.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an adaptive rule cannot reach its tolerance within budget.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when more than half the sample points of a subdifferential probe
// fail to evaluate.
struct DegenerateSampling : std::runtime_error {
    explicit DegenerateSampling(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The user-supplied gradient disagrees with finite differences of the value
// expression; analysis aborts with a diagnostic.
struct GradientMismatch : std::runtime_error {
    explicit GradientMismatch(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gencvx
