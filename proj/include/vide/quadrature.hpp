#pragma once

#include <vector>

#include "vide/mesh.hpp"

namespace vide {

/// Gamma function for positive arguments (Lanczos approximation, g=7).
double gamma_fn(double x);

/// Product-integration weight w_{n,m} for the weakly singular kernel
/// rho_alpha(t) = t^(alpha-1)/Gamma(alpha) on a uniform mesh with step tau.
double quad_weight(int n, int m, double tau, double alpha);

/// The weights w_{n,1..n} for one time level.
struct WeightRow {
    int level = 0;      // n, 1-based
    double alpha = 0.0;
    double tau = 0.0;
    std::vector<double> w;  // w[m-1] = w_{n,m}
};

WeightRow weight_row(int n, double tau, double alpha);

/// Exact row sum (t_n^(alpha+1) - t_{n-1}^(alpha+1)) / (tau * Gamma(2+alpha)).
double weight_row_sum_exact(int n, double tau, double alpha);

/// Stored Laplacian history: entry 1 = Lap U^1, entry m >= 2 = Lap (U^m + U^{m-1})/2.
class HalfStepHistory {
public:
    void append(GridFunction2D entry) { entries_.push_back(std::move(entry)); }
    int size() const { return static_cast<int>(entries_.size()); }
    const GridFunction2D& entry(int m) const { return entries_[m - 1]; }  // 1-based

private:
    std::vector<GridFunction2D> entries_;
};

/// Weighted sum w_{n,1}*H_1 + ... + w_{n,count}*H_count over the first `count`
/// history entries, accumulated in fixed index order.
GridFunction2D weighted_history_sum(const WeightRow& row, const HalfStepHistory& history,
                                    int count);

/// The full memory operator: requires history length == row level.
GridFunction2D memory_term(const WeightRow& row, const HalfStepHistory& history);

/// Crank-Nicolson time average: U^1 when n = 1, else (U^n + U^{n-1})/2.
GridFunction2D time_average(int n, const GridFunction2D& U1, const GridFunction2D& Un,
                            const GridFunction2D& Unm1);

}  // namespace vide
