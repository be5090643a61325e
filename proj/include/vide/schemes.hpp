#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "vide/linsolve.hpp"
#include "vide/mesh.hpp"
#include "vide/problems.hpp"

namespace vide {

struct SchemeConfig {
    TemporalPair time;
    SpatialMesh mesh;
    double picard_tol = 1e-12;
    int picard_max_iter = 100;
    double linear_tol = 1e-12;
    int linear_max_iter = 0;  // 0 -> 10 * interior node count
    // Alternative reading of the coarse first-step forcing: average f over the
    // first *fine* slab instead of the first coarse slab (sensitivity switch).
    bool coarse_first_step_fine_slab = false;

    int effective_linear_max_iter() const {
        return linear_max_iter > 0 ? linear_max_iter
                                   : 10 * static_cast<int>(mesh.interior_count());
    }
};

struct StepStats {
    int picard_iterations = 0;
    int cg_iterations = 0;
};

/// Ordered solution snapshots U^0..U^steps on one time mesh.
struct Trajectory {
    SpatialMesh mesh;
    double dt = 0.0;
    std::vector<GridFunction2D> states;
    std::vector<StepStats> steps;  // one entry per completed step

    int step_count() const { return static_cast<int>(states.size()) - 1; }
};

/// Implicit-side coefficients (sigma, c) of the level-n step operator: the
/// first step carries the full weight mu + w_{1,1}, later steps the half
/// weight (mu + w_{n,n})/2.
std::pair<double, double> step_operator_coefficients(int n, double tau, double alpha,
                                                     double mu);

struct PicardResult {
    GridFunction2D solution;
    int iterations = 0;
    int cg_iterations = 0;
};

/// Fixed-point iteration u <- solve(op, rhs_for(u)) until the increment drops
/// below tol * max(1, ||u||). Initial guess is the previous time level.
PicardResult picard_iterate(const std::function<GridFunction2D(const GridFunction2D&)>& rhs_for,
                            const StepOperator& op, const GridFunction2D& guess, double tol,
                            int max_iter, double linear_tol, int linear_max_iter);

/// Standard Crank-Nicolson scheme on the fine time mesh (nonlinear at every step).
Trajectory run_scn(const ProblemSpec& p, const SchemeConfig& cfg);

/// Step I of the two-grid scheme: the SCN machinery with step tau_C.
Trajectory coarse_solve(const ProblemSpec& p, const SchemeConfig& cfg);

/// Step II: Lagrange linear interpolation of a coarse trajectory onto the fine
/// time mesh; coarse values pass through unchanged at multiples of k.
Trajectory interpolate_coarse(const Trajectory& coarse, int k);

struct TtgcnRun {
    Trajectory fine;
    Trajectory coarse;
    double coarse_seconds = 0.0;
    double fine_seconds = 0.0;
};

/// The full three-step two-grid scheme: coarse solve, interpolation, then one
/// linearized Crank-Nicolson solve per fine step.
TtgcnRun run_ttgcn(const ProblemSpec& p, const SchemeConfig& cfg);

}  // namespace vide
