#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "vide/mesh.hpp"

namespace vide {

/// A complete problem instance: kernel exponent, diffusion coefficient,
/// nonlinearity with exact derivative, forcing, initial data and (when
/// available) the exact solution.
struct ProblemSpec {
    std::string name;
    double alpha = 0.5;   // kernel exponent, in (0,1)
    double mu = 1.0;      // Newtonian diffusion coefficient, >= 0
    double T = 1.0;
    double Lx = 1.0;
    double Ly = 1.0;
    std::function<double(double)> g;
    std::function<double(double)> gprime;
    std::function<double(double, double, double)> f;    // (x, y, t)
    std::function<double(double, double)> psi;          // initial data
    std::function<double(double, double, double)> exact;  // empty when unknown

    bool has_exact() const { return static_cast<bool>(exact); }
};

ProblemSpec example1(double alpha);
ProblemSpec example2(double alpha);
ProblemSpec example3(double alpha);

/// Problem lookup by name: "example1" | "example2" | "example3".
ProblemSpec make_problem(std::string_view name, double alpha);

/// Slab average (1/(t_hi-t_lo)) * integral of f over [t_lo, t_hi], sampled on
/// the interior nodes via 5-node Gauss-Legendre quadrature.
GridFunction2D forcing_slab_average(const ProblemSpec& p, const SpatialMesh& mesh,
                                    double t_lo, double t_hi);

}  // namespace vide
