#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "vide/errors.hpp"

namespace vide {

/// Uniform rectangular mesh on (0,Lx) x (0,Ly) with Mx x My cells.
struct SpatialMesh {
    double Lx = 1.0;
    double Ly = 1.0;
    int Mx = 2;
    int My = 2;
    double h1 = 0.5;
    double h2 = 0.5;

    // Interior extents (nodes carrying unknowns).
    int nx() const { return Mx - 1; }
    int ny() const { return My - 1; }
    std::size_t interior_count() const {
        return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
    }

    double x(int i) const { return i * h1; }
    double y(int j) const { return j * h2; }

    bool operator==(const SpatialMesh&) const = default;
};

SpatialMesh build_spatial_mesh(double Lx, double Ly, int Mx, int My);

/// Coupled coarse/fine uniform time meshes with ratio k = tau_C / tau_F.
struct TemporalPair {
    double T = 1.0;
    int N = 1;        // coarse step count
    int k = 2;        // refinement ratio
    int fine_steps = 2;  // k * N
    double tau_C = 0.5;
    double tau_F = 0.25;

    // Node times are formed as index*step so coarse and fine nodes coincide bitwise.
    double coarse_time(int s) const { return s * tau_C; }
    double fine_time(int n) const { return n * tau_F; }

    bool operator==(const TemporalPair&) const = default;
};

TemporalPair build_temporal_pair(double T, int N, int k);

/// Values on the interior nodes of a SpatialMesh; the boundary is implicitly zero.
class GridFunction2D {
public:
    GridFunction2D() = default;
    explicit GridFunction2D(const SpatialMesh& mesh)
        : mesh_(mesh), values_(mesh.interior_count(), 0.0) {}

    static GridFunction2D sample(const SpatialMesh& mesh,
                                 const std::function<double(double, double)>& f);

    const SpatialMesh& mesh() const { return mesh_; }

    // 1-based interior indices, i in 1..Mx-1, j in 1..My-1.
    double& operator()(int i, int j) { return values_[index(i, j)]; }
    double operator()(int i, int j) const { return values_[index(i, j)]; }

    /// Node value with the implicit zero boundary: valid for 0 <= i <= Mx, 0 <= j <= My.
    double at_node(int i, int j) const {
        if (i <= 0 || i >= mesh_.Mx || j <= 0 || j >= mesh_.My) return 0.0;
        return values_[index(i, j)];
    }

    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }
    std::size_t size() const { return values_.size(); }

    GridFunction2D& operator+=(const GridFunction2D& other);
    GridFunction2D& operator-=(const GridFunction2D& other);
    GridFunction2D& operator*=(double a);

    /// this += a * other
    GridFunction2D& axpy(double a, const GridFunction2D& other);

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j - 1) * mesh_.nx() + (i - 1);
    }

    SpatialMesh mesh_;
    std::vector<double> values_;
};

GridFunction2D operator+(GridFunction2D a, const GridFunction2D& b);
GridFunction2D operator-(GridFunction2D a, const GridFunction2D& b);
GridFunction2D operator*(double a, GridFunction2D u);

void require_same_mesh(const GridFunction2D& u, const GridFunction2D& v);

/// h1*h2-weighted inner product over interior nodes.
double inner_product(const GridFunction2D& u, const GridFunction2D& v);

double l2_norm(const GridFunction2D& u);

double max_norm(const GridFunction2D& u);

/// (||delta_x u||, ||delta_y u||) over the staggered ranges, boundary zeros included.
std::pair<double, double> gradient_norms(const GridFunction2D& u);

}  // namespace vide
