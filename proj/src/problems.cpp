#include "vide/problems.hpp"

#include <cmath>
#include <numbers>

#include "vide/errors.hpp"
#include "vide/quadrature.hpp"

namespace vide {

namespace {

constexpr double kPi = std::numbers::pi;

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
}

double sinsin(double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); }

}  // namespace

ProblemSpec example1(double alpha) {
    require_alpha(alpha);
    ProblemSpec p;
    p.name = "example1";
    p.alpha = alpha;
    p.mu = 1.0;
    p.g = [](double u) { return -u * u; };
    p.gprime = [](double u) { return -2.0 * u; };
    const double c1 = 1.0 / gamma_fn(alpha + 1.0);
    const double c2 = 1.0 / gamma_fn(alpha + 2.0);
    const double c3 = 1.0 / gamma_fn(2.0 * alpha + 2.0);
    p.exact = [alpha, c2](double x, double y, double t) {
        return (1.0 + std::pow(t, alpha + 1.0) * c2) * sinsin(x, y);
    };
    p.psi = [](double x, double y) { return sinsin(x, y); };
    // Manufactured forcing: u_t - mu*Lap u - I^alpha Lap u + u^2 assembled from
    // the closed forms I^alpha[1] = t^alpha/Gamma(alpha+1) and
    // I^alpha[t^(alpha+1)] = Gamma(alpha+2)/Gamma(2alpha+2) * t^(2alpha+1).
    p.f = [alpha, c1, c2, c3](double x, double y, double t) {
        const double s = sinsin(x, y);
        const double pi2 = kPi * kPi;
        const double linear =
            (1.0 + 2.0 * pi2) * std::pow(t, alpha) * c1 +
            2.0 * pi2 * (1.0 + std::pow(t, alpha + 1.0) * c2 +
                         std::pow(t, 2.0 * alpha + 1.0) * c3);
        const double u = (1.0 + std::pow(t, alpha + 1.0) * c2) * s;
        return linear * s + u * u;
    };
    return p;
}

ProblemSpec example2(double alpha) {
    require_alpha(alpha);
    ProblemSpec p;
    p.name = "example2";
    p.alpha = alpha;
    p.mu = 1.0;
    p.g = [](double u) { return -u - u * u * u; };
    p.gprime = [](double u) { return -1.0 - 3.0 * u * u; };
    const double c1 = 1.0 / gamma_fn(alpha + 1.0);
    const double c2 = 1.0 / gamma_fn(alpha + 2.0);
    const double c3 = 1.0 / gamma_fn(2.0 * alpha + 2.0);
    p.exact = [alpha, c2](double x, double y, double t) {
        return std::pow(t, alpha + 1.0) * c2 * sinsin(x, y);
    };
    p.psi = [](double, double) { return 0.0; };
    p.f = [alpha, c1, c2, c3](double x, double y, double t) {
        const double s = sinsin(x, y);
        const double pi2 = kPi * kPi;
        const double u = std::pow(t, alpha + 1.0) * c2 * s;
        return (std::pow(t, alpha) * c1 + (2.0 * pi2 + 1.0) * std::pow(t, alpha + 1.0) * c2 +
                2.0 * pi2 * std::pow(t, 2.0 * alpha + 1.0) * c3) *
                   s +
               u * u * u;  // -g(u) = u + u^3; the +u sits in the (2pi^2+1) bracket
    };
    return p;
}

ProblemSpec example3(double alpha) {
    require_alpha(alpha);
    ProblemSpec p;
    p.name = "example3";
    p.alpha = alpha;
    p.mu = 1.0;
    p.g = [](double u) { return -u * u * u; };
    p.gprime = [](double u) { return -3.0 * u * u; };
    p.psi = [](double x, double y) { return x * y * (1.0 - x) * (1.0 - y); };
    p.f = [](double, double, double) { return 0.0; };
    return p;
}

ProblemSpec make_problem(std::string_view name, double alpha) {
    if (name == "example1") return example1(alpha);
    if (name == "example2") return example2(alpha);
    if (name == "example3") return example3(alpha);
    throw DomainError("unknown problem: " + std::string(name));
}

namespace {

// 5-node Gauss-Legendre on [-1,1], exact through degree 9.
constexpr double kGaussNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
constexpr double kGaussWeights[5] = {0.2369268850561891, 0.4786286704993665,
                                     0.5688888888888889, 0.4786286704993665,
                                     0.2369268850561891};

double gauss_panel(const ProblemSpec& p, double x, double y, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int q = 0; q < 5; ++q)
        acc += kGaussWeights[q] * p.f(x, y, mid + half * kGaussNodes[q]);
    return half * acc;
}

// Integral of f over [0, hi]. The forcings carry fractional powers t^alpha whose
// derivatives blow up at t = 0, so a Gauss panel has a scale-invariant relative
// error (~1e-4) there -- enough to visibly pollute the first-step error that
// dominates the temporal ladders. Tanh-sinh (double-exponential) quadrature
// clusters nodes toward the endpoints and integrates such algebraic endpoint
// singularities to ~1e-13 relative with few evaluations.
struct TanhSinhRule {
    static constexpr int kHalf = 14;       // nodes k = -kHalf..kHalf
    static constexpr double kStep = 0.25;  // spacing in the u variable
    double frac[2 * kHalf + 1];            // node position as a fraction of hi
    double weight[2 * kHalf + 1];          // includes the step factor

    TanhSinhRule() {
        for (int k = -kHalf; k <= kHalf; ++k) {
            const double u = k * kStep;
            const double s = 0.5 * std::numbers::pi * std::sinh(u);
            // 0.5*(1 + tanh(s)) evaluated cancellation-free near the endpoint
            frac[k + kHalf] = 1.0 / (1.0 + std::exp(-2.0 * s));
            weight[k + kHalf] = kStep * 0.25 * std::numbers::pi * std::cosh(u) /
                                (std::cosh(s) * std::cosh(s));
        }
    }
};

double singular_slab_integral(const ProblemSpec& p, double x, double y, double hi) {
    static const TanhSinhRule rule;
    double acc = 0.0;
    for (int q = 0; q < 2 * TanhSinhRule::kHalf + 1; ++q)
        acc += rule.weight[q] * p.f(x, y, hi * rule.frac[q]);
    return hi * acc;
}

}  // namespace

GridFunction2D forcing_slab_average(const ProblemSpec& p, const SpatialMesh& mesh,
                                    double t_lo, double t_hi) {
    if (!(t_lo < t_hi)) throw DomainError("slab endpoints must satisfy t_lo < t_hi");
    const double inv_len = 1.0 / (t_hi - t_lo);
    const bool singular = t_lo == 0.0;
    GridFunction2D b(mesh);
    for (int j = 1; j <= mesh.ny(); ++j)
        for (int i = 1; i <= mesh.nx(); ++i) {
            const double x = mesh.x(i);
            const double y = mesh.y(j);
            b(i, j) = inv_len * (singular ? singular_slab_integral(p, x, y, t_hi)
                                          : gauss_panel(p, x, y, t_lo, t_hi));
        }
    return b;
}

}  // namespace vide
