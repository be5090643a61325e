#pragma once

// Shared helpers for the test suites: seeded random grid functions and the
// brute-force quadrature oracle for the product-integration weights. Nothing
// here touches the closed-form weight path it is used to check.

#include <cmath>
#include <functional>
#include <random>

#include "vide/mesh.hpp"
#include "vide/quadrature.hpp"

namespace vide::testing {

inline GridFunction2D random_grid(const SpatialMesh& mesh, std::mt19937& rng,
                                  double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    GridFunction2D u(mesh);
    for (double& v : u.data()) v = dist(rng);
    return u;
}

// Adaptive Simpson on [a,b] with absolute tolerance; handles the mild
// endpoint singularities of the kernel's inner antiderivative.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 60) {
    auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
            int d) -> double {
        const double m = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = simpson(lo, m, flo, flm, fmid);
        const double right = simpson(m, hi, fmid, frm, fhi);
        const double delta = left + right - whole;
        if (d <= 0 || std::abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return rec(lo, m, flo, flm, fmid, left, d - 1) +
               rec(m, hi, fmid, frm, fhi, right, d - 1);
    };
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), depth);
}

// Brute-force product-integration weight: (1/tau) * int_{t_{n-1}}^{t_n} of the
// analytic inner integral int_{t_{m-1}}^{min(t,t_m)} rho_alpha(t-s) ds.
inline double oracle_weight(int n, int m, double tau, double alpha) {
    const double g1 = gamma_fn(alpha + 1.0);
    const double tn1 = (n - 1) * tau, tn = n * tau;
    const double tm1 = (m - 1) * tau, tm = m * tau;
    auto inner = [&](double t) {
        // int rho_alpha(t - s) ds from tm1 to min(t, tm)
        const double hi = std::min(t, tm);
        if (hi <= tm1) return 0.0;
        const double a = std::pow(t - tm1, alpha);
        const double b = (t > hi) ? std::pow(t - hi, alpha) : 0.0;
        return (a - b) / g1;
    };
    return adaptive_simpson(inner, tn1, tn, 1e-13 * tau) / tau;
}

}  // namespace vide::testing
