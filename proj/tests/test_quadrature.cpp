#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "vide/quadrature.hpp"
#include "vide/stencil.hpp"

using namespace vide;
using vide::testing::oracle_weight;
using vide::testing::random_grid;

TEST_CASE("gamma function values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(gamma_fn(2.5) == doctest::Approx(1.3293403881791370).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    // recurrence consistency across the range used by the weights
    for (double x = 0.05; x < 4.0; x += 0.173)
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("weight closed forms") {
    CHECK(quad_weight(1, 1, 1.0, 0.5) == doctest::Approx(0.7522527780636751).epsilon(1e-12));
    const double w21 = (std::pow(2.0, 1.5) - 2.0) / gamma_fn(2.5);
    CHECK(quad_weight(2, 1, 1.0, 0.5) == doctest::Approx(w21).epsilon(1e-12));

    CHECK_THROWS_AS(quad_weight(2, 3, 1.0, 0.5), HistoryError);
    CHECK_THROWS_AS(quad_weight(2, 0, 1.0, 0.5), HistoryError);
    CHECK_THROWS_AS(quad_weight(2, 1, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(quad_weight(2, 1, -1.0, 0.5), DomainError);
}

TEST_CASE("weight rows and the row-sum identity") {
    WeightRow r1 = weight_row(1, 1.0, 0.5);
    REQUIRE(r1.w.size() == 1);
    CHECK(r1.w[0] == doctest::Approx(0.7522527780636751).epsilon(1e-12));

    WeightRow r2 = weight_row(2, 1.0, 0.5);
    REQUIRE(r2.w.size() == 2);
    const double sum = r2.w[0] + r2.w[1];
    CHECK(sum == doctest::Approx((std::pow(2.0, 1.5) - 1.0) / gamma_fn(2.5)).epsilon(1e-12));

    for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9})
        for (double tau : {1.0, 1.0 / 64.0})
            for (int n : {1, 2, 3, 7, 50, 200}) {
                WeightRow row = weight_row(n, tau, alpha);
                double s = 0.0;
                for (double w : row.w) {
                    CHECK(w > 0.0);
                    s += w;
                }
                const double expect = weight_row_sum_exact(n, tau, alpha);
                CHECK(std::abs(s - expect) <= 1e-12 * expect);
            }
}

TEST_CASE("weights match the brute-force integral oracle") {
    for (double alpha : {0.25, 0.5, 0.75})
        for (double tau : {1.0, 1.0 / 8.0})
            for (int n = 1; n <= 6; ++n)
                for (int m = 1; m <= n; ++m)
                    CHECK(std::abs(quad_weight(n, m, tau, alpha) -
                                   oracle_weight(n, m, tau, alpha)) <= 1e-9);
}

TEST_CASE("memory term") {
    SpatialMesh m = build_spatial_mesh(1.0, 1.0, 4, 4);
    std::mt19937 rng(2);

    HalfStepHistory h1;
    h1.append(GridFunction2D(m));
    CHECK(max_norm(memory_term(weight_row(1, 1.0, 0.5), h1)) == 0.0);

    HalfStepHistory h2;
    GridFunction2D z = random_grid(m, rng);
    h2.append(z);
    GridFunction2D out = memory_term(weight_row(1, 1.0, 0.5), h2);
    GridFunction2D expect = z;
    expect *= 0.7522527780636751;
    CHECK(l2_norm(out - expect) <= 1e-12 * l2_norm(expect));

    // constant fields reduce to a scalar dot product with the weight row
    HalfStepHistory h3;
    const double c[3] = {1.5, -0.25, 2.0};
    for (double cv : c) {
        GridFunction2D f(m);
        for (double& v : f.data()) v = cv;
        h3.append(f);
    }
    WeightRow row3 = weight_row(3, 0.25, 0.6);
    GridFunction2D m3 = memory_term(row3, h3);
    const double dot = row3.w[0] * c[0] + row3.w[1] * c[1] + row3.w[2] * c[2];
    CHECK(m3(1, 1) == doctest::Approx(dot).epsilon(1e-14));
    CHECK(m3(2, 3) == doctest::Approx(dot).epsilon(1e-14));

    CHECK_THROWS_AS(memory_term(weight_row(2, 1.0, 0.5), h3), HistoryError);
}

TEST_CASE("crank-nicolson time average") {
    SpatialMesh m = build_spatial_mesh(1.0, 1.0, 3, 3);
    std::mt19937 rng(9);
    GridFunction2D z = random_grid(m, rng);

    CHECK(l2_norm(time_average(1, z, z, z) - z) == 0.0);

    GridFunction2D neg = z;
    neg *= -1.0;
    CHECK(max_norm(time_average(2, z, z, neg)) <= 1e-15);

    GridFunction2D three(m), one(m);
    for (double& v : three.data()) v = 3.0;
    for (double& v : one.data()) v = 1.0;
    GridFunction2D avg = time_average(5, z, three, one);
    CHECK(avg(1, 1) == doctest::Approx(2.0));
}

namespace {

// Accumulated quadratic form of Lemma 2.6 for one staggered direction.
double memory_form(const std::vector<StaggeredField>& d, double tau, double alpha) {
    const int steps = static_cast<int>(d.size());  // entries are levels 1..steps
    std::vector<StaggeredField> half;  // H_1 = D^1, H_m = (D^m + D^{m-1})/2
    half.reserve(steps);
    for (int m = 1; m <= steps; ++m) {
        StaggeredField h = d[m - 1];
        if (m >= 2)
            for (std::size_t q = 0; q < h.values.size(); ++q)
                h.values[q] = 0.5 * (d[m - 1].values[q] + d[m - 2].values[q]);
        half.push_back(std::move(h));
    }
    double total = 0.0;
    for (int n = 1; n <= steps; ++n) {
        WeightRow row = weight_row(n, tau, alpha);
        StaggeredField l2 = half[0];
        for (auto& v : l2.values) v *= row.w[0];
        for (int m = 2; m <= n; ++m)
            for (std::size_t q = 0; q < l2.values.size(); ++q)
                l2.values[q] += row.w[m - 1] * half[m - 1].values[q];
        total += staggered_inner_product(half[n - 1], l2);
    }
    return total;
}

}  // namespace

TEST_CASE("memory quadratic form is nonnegative") {
    std::mt19937 rng(77);
    for (int rep = 0; rep < 100; ++rep) {
        const int steps = 1 + static_cast<int>(rng() % 16);
        SpatialMesh mesh = build_spatial_mesh(1.0, 1.0, 4 + rng() % 13, 4 + rng() % 13);
        const double alpha = 0.1 + 0.8 * (rng() % 100) / 100.0;
        const double tau = 1.0 / steps;
        std::vector<StaggeredField> dx, dy;
        double scale = 0.0;
        for (int n = 1; n <= steps; ++n) {
            GridFunction2D v = random_grid(mesh, rng);
            auto [gx, gy] = gradient_norms(v);
            scale += gx * gx + gy * gy;
            dx.push_back(forward_diff_x(v));
            dy.push_back(forward_diff_y(v));
        }
        const double total = memory_form(dx, tau, alpha) + memory_form(dy, tau, alpha);
        CHECK(total >= -1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("telescoping inequality") {
    std::mt19937 rng(91);
    for (int rep = 0; rep < 100; ++rep) {
        const int steps = 1 + static_cast<int>(rng() % 16);
        SpatialMesh mesh = build_spatial_mesh(1.0, 1.0, 4 + rng() % 13, 4 + rng() % 13);
        const double tau = 1.0 / steps;
        std::vector<GridFunction2D> v;
        for (int n = 0; n <= steps; ++n) v.push_back(random_grid(mesh, rng));

        GridFunction2D dt1 = v[1] - v[0];
        dt1 *= 1.0 / tau;
        double lhs = tau * inner_product(v[1], dt1);
        for (int n = 2; n <= steps; ++n) {
            GridFunction2D dt = v[n] - v[n - 1];
            dt *= 1.0 / tau;
            GridFunction2D mid = v[n] + v[n - 1];
            mid *= 0.5;
            lhs += tau * inner_product(mid, dt);
        }
        const double rhs = 0.5 * (inner_product(v[steps], v[steps]) -
                                  inner_product(v[0], v[0]));
        CHECK(lhs >= rhs - 1e-12);
    }
}
