#include "vide/linsolve.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vide/stencil.hpp"

namespace vide {

GridFunction2D StepOperator::apply(const GridFunction2D& x) const {
    if (!(x.mesh() == mesh)) throw ShapeError("operand mesh does not match operator mesh");
    GridFunction2D out = x;
    out *= sigma;
    if (c != 0.0) out.axpy(-c, apply_laplacian(x));
    if (shift) {
        require_same_mesh(x, *shift);
        auto& o = out.data();
        const auto& d = shift->data();
        const auto& xv = x.data();
        for (std::size_t p = 0; p < o.size(); ++p) o[p] -= d[p] * xv[p];
    }
    return out;
}

double StepOperator::definiteness_margin() const {
    double dmax = 0.0;
    if (shift)
        for (double v : shift->data()) dmax = std::max(dmax, v);
    return sigma - dmax;
}

std::pair<GridFunction2D, SolveReport> solve(const StepOperator& op,
                                             const GridFunction2D& rhs, double tol,
                                             int max_iter,
                                             const GridFunction2D* initial_guess) {
    if (!(tol > 0.0)) throw DomainError("solver tolerance must be positive");
    if (op.c < 0.0 || op.sigma <= 0.0 || op.definiteness_margin() <= 0.0)
        throw IndefiniteOperatorError(
            "step operator is not positive definite (sigma - max D = " +
            std::to_string(op.definiteness_margin()) + ")");

    const SpatialMesh& m = op.mesh;
    SolveReport report;

    const double rhs_norm = l2_norm(rhs);
    if (rhs_norm == 0.0 && initial_guess == nullptr) {
        report.converged = true;
        return {GridFunction2D(m), report};
    }
    const double target = tol * std::max(rhs_norm, std::numeric_limits<double>::min());

    // Closed-form Jacobi diagonal: sigma + 2c/h1^2 + 2c/h2^2 - D_ij.
    const double base_diag =
        op.sigma + 2.0 * op.c / (m.h1 * m.h1) + 2.0 * op.c / (m.h2 * m.h2);
    std::vector<double> inv_diag(m.interior_count(), 1.0 / base_diag);
    if (op.shift) {
        const auto& d = op.shift->data();
        for (std::size_t p = 0; p < inv_diag.size(); ++p)
            inv_diag[p] = 1.0 / (base_diag - d[p]);
    }

    GridFunction2D x = initial_guess ? *initial_guess : GridFunction2D(m);
    GridFunction2D r = rhs;
    if (initial_guess) r -= op.apply(x);

    GridFunction2D z(m);
    auto precondition = [&](const GridFunction2D& in, GridFunction2D& out) {
        const auto& rv = in.data();
        auto& zv = out.data();
        for (std::size_t p = 0; p < zv.size(); ++p) zv[p] = inv_diag[p] * rv[p];
    };

    precondition(r, z);
    GridFunction2D p = z;
    double rz = inner_product(r, z);
    double res = l2_norm(r);
    report.residual_history.push_back(res);

    while (res > target) {
        if (report.iterations >= max_iter)
            throw NonConvergenceError("conjugate gradients exhausted " +
                                          std::to_string(max_iter) + " iterations",
                                      report.iterations, res / rhs_norm);
        GridFunction2D Ap = op.apply(p);
        const double pAp = inner_product(p, Ap);
        const double step = rz / pAp;
        x.axpy(step, p);
        r.axpy(-step, Ap);
        ++report.iterations;

        res = l2_norm(r);
        report.residual_history.push_back(res);
        if (res <= target) break;

        precondition(r, z);
        const double rz_next = inner_product(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        p *= beta;
        p += z;
    }

    // Recompute the residual from scratch; restart if the recursion drifted.
    GridFunction2D true_r = rhs - op.apply(x);
    double true_res = l2_norm(true_r);
    if (true_res > target && report.iterations < max_iter) {
        auto [x2, rep2] = solve(op, rhs, tol, max_iter - report.iterations, &x);
        rep2.iterations += report.iterations;
        rep2.residual_history.insert(rep2.residual_history.begin(),
                                     report.residual_history.begin(),
                                     report.residual_history.end());
        return {std::move(x2), std::move(rep2)};
    }

    report.relative_residual = rhs_norm > 0.0 ? true_res / rhs_norm : true_res;
    report.converged = true_res <= target;
    if (!report.converged)
        throw NonConvergenceError("conjugate gradients stalled", report.iterations,
                                  report.relative_residual);
    return {std::move(x), std::move(report)};
}

}  // namespace vide
