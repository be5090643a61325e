#include "vide/stencil.hpp"

namespace vide {

StaggeredField forward_diff_x(const GridFunction2D& u) {
    const SpatialMesh& m = u.mesh();
    StaggeredField d(m, StaggeredField::Axis::x);
    for (int j = 1; j <= m.ny(); ++j)
        for (int i = 0; i <= m.Mx - 1; ++i)
            d(i, j) = (u.at_node(i + 1, j) - u.at_node(i, j)) / m.h1;
    return d;
}

StaggeredField forward_diff_y(const GridFunction2D& u) {
    const SpatialMesh& m = u.mesh();
    StaggeredField d(m, StaggeredField::Axis::y);
    for (int j = 0; j <= m.My - 1; ++j)
        for (int i = 1; i <= m.nx(); ++i)
            d(i, j) = (u.at_node(i, j + 1) - u.at_node(i, j)) / m.h2;
    return d;
}

double staggered_inner_product(const StaggeredField& a, const StaggeredField& b) {
    if (!(a.mesh == b.mesh) || a.axis != b.axis)
        throw ShapeError("staggered fields live on different ranges");
    double acc = 0.0;
    for (std::size_t p = 0; p < a.values.size(); ++p) acc += a.values[p] * b.values[p];
    return a.mesh.h1 * a.mesh.h2 * acc;
}

GridFunction2D apply_laplacian(const GridFunction2D& u) {
    const SpatialMesh& m = u.mesh();
    GridFunction2D out(m);
    const double ax = 1.0 / (m.h1 * m.h1);
    const double ay = 1.0 / (m.h2 * m.h2);
    for (int j = 1; j <= m.ny(); ++j)
        for (int i = 1; i <= m.nx(); ++i) {
            double c = u(i, j);
            double dxx = (u.at_node(i - 1, j) - 2.0 * c + u.at_node(i + 1, j)) * ax;
            double dyy = (u.at_node(i, j - 1) - 2.0 * c + u.at_node(i, j + 1)) * ay;
            out(i, j) = dxx + dyy;
        }
    return out;
}

}  // namespace vide
