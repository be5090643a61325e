#include "vide/schemes.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "vide/quadrature.hpp"
#include "vide/stencil.hpp"

namespace vide {

namespace {

GridFunction2D map_pointwise(const GridFunction2D& u,
                             const std::function<double(double)>& fn) {
    GridFunction2D out = u;
    for (double& v : out.data()) v = fn(v);
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Nonlinear Crank-Nicolson march shared by the fine-grid SCN scheme and the
// coarse grid of the two-grid scheme; `forcing(n)` supplies b^n for 1 <= n <= nsteps.
Trajectory scn_march(const ProblemSpec& p, const SchemeConfig& cfg, double tau, int nsteps,
                     const std::function<GridFunction2D(int)>& forcing) {
    const SpatialMesh& mesh = cfg.mesh;
    Trajectory traj;
    traj.mesh = mesh;
    traj.dt = tau;
    traj.states.reserve(nsteps + 1);
    traj.states.push_back(GridFunction2D::sample(mesh, p.psi));

    HalfStepHistory history;
    GridFunction2D lap_prev(mesh);  // Lap of the latest state
    const int lin_max = cfg.effective_linear_max_iter();

    for (int n = 1; n <= nsteps; ++n) {
        const GridFunction2D& prev = traj.states.back();
        const WeightRow row = weight_row(n, tau, p.alpha);
        const auto [sigma, c] = step_operator_coefficients(n, tau, p.alpha, p.mu);
        StepOperator op{sigma, c, std::nullopt, mesh};

        GridFunction2D base = forcing(n);
        base.axpy(sigma, prev);
        base.axpy(0.5, map_pointwise(prev, p.g));
        if (n > 1) {
            base.axpy(c, lap_prev);
            base += weighted_history_sum(row, history, n - 1);
        }

        auto rhs_for = [&](const GridFunction2D& u) {
            GridFunction2D rhs = base;
            rhs.axpy(0.5, map_pointwise(u, p.g));
            return rhs;
        };
        PicardResult result;
        try {
            result = picard_iterate(rhs_for, op, prev, cfg.picard_tol, cfg.picard_max_iter,
                                    cfg.linear_tol, lin_max);
        } catch (NonConvergenceError& e) {
            throw NonConvergenceError("time level " + std::to_string(n) + ": " + e.what(),
                                      e.iterations, e.residual);
        }

        GridFunction2D lap_new = apply_laplacian(result.solution);
        if (n == 1) {
            history.append(lap_new);
        } else {
            GridFunction2D half = lap_new;
            half += lap_prev;
            half *= 0.5;
            history.append(std::move(half));
        }
        lap_prev = std::move(lap_new);
        traj.states.push_back(std::move(result.solution));
        traj.steps.push_back({result.iterations, result.cg_iterations});
    }
    return traj;
}

}  // namespace

std::pair<double, double> step_operator_coefficients(int n, double tau, double alpha,
                                                     double mu) {
    const double wnn = quad_weight(n, n, tau, alpha);
    if (n == 1) return {1.0 / tau, mu + wnn};
    return {1.0 / tau, 0.5 * (mu + wnn)};
}

PicardResult picard_iterate(const std::function<GridFunction2D(const GridFunction2D&)>& rhs_for,
                            const StepOperator& op, const GridFunction2D& guess, double tol,
                            int max_iter, double linear_tol, int linear_max_iter) {
    PicardResult result{guess, 0, 0};
    for (int it = 1; it <= max_iter; ++it) {
        auto [next, report] =
            solve(op, rhs_for(result.solution), linear_tol, linear_max_iter,
                  &result.solution);
        result.cg_iterations += report.iterations;
        result.iterations = it;
        const double increment = l2_norm(next - result.solution);
        result.solution = std::move(next);
        if (increment <= tol * std::max(1.0, l2_norm(result.solution))) return result;
    }
    throw NonConvergenceError("Picard iteration did not converge in " +
                                  std::to_string(max_iter) + " iterations",
                              max_iter, 0.0);
}

Trajectory run_scn(const ProblemSpec& p, const SchemeConfig& cfg) {
    const double tau = cfg.time.tau_F;
    return scn_march(p, cfg, tau, cfg.time.fine_steps, [&](int n) {
        return forcing_slab_average(p, cfg.mesh, (n - 1) * tau, n * tau);
    });
}

Trajectory coarse_solve(const ProblemSpec& p, const SchemeConfig& cfg) {
    const double tau = cfg.time.tau_C;
    return scn_march(p, cfg, tau, cfg.time.N, [&](int s) {
        if (s == 1 && cfg.coarse_first_step_fine_slab) {
            const double tf = cfg.time.tau_F;
            return forcing_slab_average(p, cfg.mesh, (cfg.time.k - 1) * tf,
                                        cfg.time.k * tf);
        }
        return forcing_slab_average(p, cfg.mesh, (s - 1) * tau, s * tau);
    });
}

Trajectory interpolate_coarse(const Trajectory& coarse, int k) {
    if (k < 2) throw InvalidRatioError("two-grid ratio k must be at least 2");
    Trajectory fine;
    fine.mesh = coarse.mesh;
    fine.dt = coarse.dt / k;
    const int N = coarse.step_count();
    fine.states.reserve(N * k + 1);
    fine.states.push_back(coarse.states[0]);
    for (int s = 1; s <= N; ++s) {
        const GridFunction2D& lo = coarse.states[s - 1];
        const GridFunction2D& hi = coarse.states[s];
        for (int q = 1; q < k; ++q) {
            const double w = static_cast<double>(q) / k;
            GridFunction2D v = lo;
            v *= 1.0 - w;
            v.axpy(w, hi);
            fine.states.push_back(std::move(v));
        }
        fine.states.push_back(hi);
    }
    return fine;
}

TtgcnRun run_ttgcn(const ProblemSpec& p, const SchemeConfig& cfg) {
    TtgcnRun run;
    const auto t0 = std::chrono::steady_clock::now();
    run.coarse = coarse_solve(p, cfg);
    run.coarse_seconds = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    const Trajectory aux = interpolate_coarse(run.coarse, cfg.time.k);

    const SpatialMesh& mesh = cfg.mesh;
    const double tau = cfg.time.tau_F;
    const int nsteps = cfg.time.fine_steps;
    const int lin_max = cfg.effective_linear_max_iter();

    Trajectory& fine = run.fine;
    fine.mesh = mesh;
    fine.dt = tau;
    fine.states.reserve(nsteps + 1);
    fine.states.push_back(aux.states[0]);

    HalfStepHistory history;
    GridFunction2D lap_prev(mesh);

    for (int n = 1; n <= nsteps; ++n) {
        const GridFunction2D& prev = fine.states.back();
        const GridFunction2D& uc = aux.states[n];
        const WeightRow row = weight_row(n, tau, p.alpha);
        const auto [sigma, c] = step_operator_coefficients(n, tau, p.alpha, p.mu);

        // Taylor linearization about the interpolated coarse value: the implicit
        // side picks up the diagonal shift (1/2) g'(U_C^n).
        GridFunction2D shift = map_pointwise(uc, p.gprime);
        shift *= 0.5;
        StepOperator op{sigma, c, shift, mesh};

        GridFunction2D rhs =
            forcing_slab_average(p, mesh, (n - 1) * tau, n * tau);
        rhs.axpy(sigma, prev);
        rhs.axpy(0.5, map_pointwise(prev, p.g));
        rhs.axpy(0.5, map_pointwise(uc, p.g));
        // -(1/2) g'(U_C^n) * U_C^n, reusing the assembled shift
        for (std::size_t q = 0; q < rhs.data().size(); ++q)
            rhs.data()[q] -= shift.data()[q] * uc.data()[q];
        if (n > 1) {
            rhs.axpy(c, lap_prev);
            rhs += weighted_history_sum(row, history, n - 1);
        }

        auto [next, report] = solve(op, rhs, cfg.linear_tol, lin_max, &prev);

        GridFunction2D lap_new = apply_laplacian(next);
        if (n == 1) {
            history.append(lap_new);
        } else {
            GridFunction2D half = lap_new;
            half += lap_prev;
            half *= 0.5;
            history.append(std::move(half));
        }
        lap_prev = std::move(lap_new);
        fine.states.push_back(std::move(next));
        fine.steps.push_back({0, report.iterations});
    }
    run.fine_seconds = seconds_since(t1);
    return run;
}

}  // namespace vide
