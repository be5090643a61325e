#pragma once

#include <vector>

#include "vide/mesh.hpp"

namespace vide {

/// Staggered first differences delta_x z_{i+1/2,j} (i = 0..Mx-1, j = 1..My-1)
/// or delta_y z_{i,j+1/2} (i = 1..Mx-1, j = 0..My-1), boundary zeros applied.
struct StaggeredField {
    enum class Axis { x, y };

    StaggeredField(const SpatialMesh& mesh, Axis axis)
        : mesh(mesh),
          axis(axis),
          values(axis == Axis::x
                     ? static_cast<std::size_t>(mesh.Mx) * mesh.ny()
                     : static_cast<std::size_t>(mesh.nx()) * mesh.My,
                 0.0) {}

    // For Axis::x: i in 0..Mx-1, j in 1..My-1. For Axis::y: i in 1..Mx-1, j in 0..My-1.
    double& operator()(int i, int j) { return values[index(i, j)]; }
    double operator()(int i, int j) const { return values[index(i, j)]; }

    std::size_t index(int i, int j) const {
        if (axis == Axis::x)
            return static_cast<std::size_t>(j - 1) * mesh.Mx + i;
        return static_cast<std::size_t>(j) * mesh.nx() + (i - 1);
    }

    SpatialMesh mesh;
    Axis axis;
    std::vector<double> values;
};

StaggeredField forward_diff_x(const GridFunction2D& u);
StaggeredField forward_diff_y(const GridFunction2D& u);

/// h1*h2-weighted dot product of two staggered fields over the same range.
double staggered_inner_product(const StaggeredField& a, const StaggeredField& b);

/// Five-point discrete Laplacian with implicit zero boundary.
GridFunction2D apply_laplacian(const GridFunction2D& u);

}  // namespace vide
