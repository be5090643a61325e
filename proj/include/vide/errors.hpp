#pragma once

#include <stdexcept>
#include <string>

namespace vide {

struct InvalidMeshError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidRatioError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct HistoryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndefiniteOperatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear solve or Picard iteration failed to reach tolerance.
struct NonConvergenceError : std::runtime_error {
    NonConvergenceError(const std::string& what, int iterations, double residual)
        : std::runtime_error(what), iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

struct ProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace vide
