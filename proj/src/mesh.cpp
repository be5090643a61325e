#include "vide/mesh.hpp"

#include <cmath>
#include <string>

namespace vide {

SpatialMesh build_spatial_mesh(double Lx, double Ly, int Mx, int My) {
    if (Lx <= 0.0 || Ly <= 0.0)
        throw InvalidMeshError("domain lengths must be positive");
    if (Mx < 2 || My < 2)
        throw InvalidMeshError("cell counts must be at least 2, got Mx=" +
                               std::to_string(Mx) + " My=" + std::to_string(My));
    SpatialMesh m;
    m.Lx = Lx;
    m.Ly = Ly;
    m.Mx = Mx;
    m.My = My;
    m.h1 = Lx / Mx;
    m.h2 = Ly / My;
    return m;
}

TemporalPair build_temporal_pair(double T, int N, int k) {
    if (T <= 0.0) throw InvalidMeshError("final time must be positive");
    if (N < 1) throw InvalidMeshError("coarse step count must be at least 1");
    if (k < 2) throw InvalidRatioError("two-grid ratio k must be at least 2, got " +
                                       std::to_string(k));
    TemporalPair p;
    p.T = T;
    p.N = N;
    p.k = k;
    p.fine_steps = k * N;
    p.tau_C = T / N;
    p.tau_F = T / (static_cast<double>(k) * N);
    return p;
}

GridFunction2D GridFunction2D::sample(const SpatialMesh& mesh,
                                      const std::function<double(double, double)>& f) {
    GridFunction2D u(mesh);
    for (int j = 1; j <= mesh.ny(); ++j)
        for (int i = 1; i <= mesh.nx(); ++i)
            u(i, j) = f(mesh.x(i), mesh.y(j));
    return u;
}

GridFunction2D& GridFunction2D::operator+=(const GridFunction2D& other) {
    require_same_mesh(*this, other);
    for (std::size_t p = 0; p < values_.size(); ++p) values_[p] += other.values_[p];
    return *this;
}

GridFunction2D& GridFunction2D::operator-=(const GridFunction2D& other) {
    require_same_mesh(*this, other);
    for (std::size_t p = 0; p < values_.size(); ++p) values_[p] -= other.values_[p];
    return *this;
}

GridFunction2D& GridFunction2D::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

GridFunction2D& GridFunction2D::axpy(double a, const GridFunction2D& other) {
    require_same_mesh(*this, other);
    for (std::size_t p = 0; p < values_.size(); ++p) values_[p] += a * other.values_[p];
    return *this;
}

GridFunction2D operator+(GridFunction2D a, const GridFunction2D& b) {
    a += b;
    return a;
}

GridFunction2D operator-(GridFunction2D a, const GridFunction2D& b) {
    a -= b;
    return a;
}

GridFunction2D operator*(double a, GridFunction2D u) {
    u *= a;
    return u;
}

void require_same_mesh(const GridFunction2D& u, const GridFunction2D& v) {
    if (!(u.mesh() == v.mesh()))
        throw ShapeError("grid functions live on different meshes");
}

double inner_product(const GridFunction2D& u, const GridFunction2D& v) {
    require_same_mesh(u, v);
    // Fixed summation order so repeated runs are bitwise identical.
    double acc = 0.0;
    const auto& a = u.data();
    const auto& b = v.data();
    for (std::size_t p = 0; p < a.size(); ++p) acc += a[p] * b[p];
    return u.mesh().h1 * u.mesh().h2 * acc;
}

double l2_norm(const GridFunction2D& u) { return std::sqrt(inner_product(u, u)); }

double max_norm(const GridFunction2D& u) {
    double m = 0.0;
    for (double v : u.data()) m = std::max(m, std::abs(v));
    return m;
}

std::pair<double, double> gradient_norms(const GridFunction2D& u) {
    const SpatialMesh& m = u.mesh();
    double sx = 0.0;
    for (int j = 1; j <= m.ny(); ++j)
        for (int i = 0; i <= m.Mx - 1; ++i) {
            double d = (u.at_node(i + 1, j) - u.at_node(i, j)) / m.h1;
            sx += d * d;
        }
    double sy = 0.0;
    for (int j = 0; j <= m.My - 1; ++j)
        for (int i = 1; i <= m.nx(); ++i) {
            double d = (u.at_node(i, j + 1) - u.at_node(i, j)) / m.h2;
            sy += d * d;
        }
    double w = m.h1 * m.h2;
    return {std::sqrt(w * sx), std::sqrt(w * sy)};
}

}  // namespace vide
