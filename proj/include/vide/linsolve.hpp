#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vide/mesh.hpp"

namespace vide {

/// The SPD per-step operator sigma*I - c*Lap_h - D, with D an optional diagonal
/// shift (the Taylor linearization term on the fine grid).
struct StepOperator {
    double sigma = 1.0;  // 1/tau
    double c = 0.0;      // Laplacian coefficient, >= 0
    std::optional<GridFunction2D> shift;  // D, applied pointwise
    SpatialMesh mesh;

    GridFunction2D apply(const GridFunction2D& x) const;

    /// min over nodes of (sigma - D_ij); must stay positive for definiteness.
    double definiteness_margin() const;
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;  // absolute residual norms, per iteration
};

/// Jacobi-preconditioned conjugate gradients, matrix-free and deterministic.
/// Throws IndefiniteOperatorError if the definiteness guard fails and
/// NonConvergenceError if max_iter is exhausted.
std::pair<GridFunction2D, SolveReport> solve(const StepOperator& op,
                                             const GridFunction2D& rhs, double tol,
                                             int max_iter,
                                             const GridFunction2D* initial_guess = nullptr);

}  // namespace vide
