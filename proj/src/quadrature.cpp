#include "vide/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vide {

namespace {

// Lanczos approximation, g = 7, 9 terms. Relative error below 1e-14 on (0, 10);
// larger arguments go through the recurrence until the series range is reached.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    // valid for x >= 0.5
    double a = kLanczos[0];
    double t = x + 6.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i - 1.0);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn requires a positive argument");
    if (x < 0.5) {
        // reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1-x))
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    return lanczos_gamma(x);
}

double quad_weight(int n, int m, double tau, double alpha) {
    if (m < 1 || m > n)
        throw HistoryError("weight index out of range: n=" + std::to_string(n) +
                           " m=" + std::to_string(m));
    if (!(tau > 0.0)) throw DomainError("step size must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");

    const double scale = std::pow(tau, alpha) / gamma_fn(2.0 + alpha);
    if (m == n) return scale;
    // Difference of bracketed differences; arguments are integer multiples of tau.
    const double gamma1 = alpha + 1.0;
    const double d = static_cast<double>(n - m);
    const double upper = std::pow(d + 1.0, gamma1) - std::pow(d, gamma1);
    const double lower = std::pow(d, gamma1) - std::pow(d - 1.0, gamma1);
    return scale * (upper - lower);
}

WeightRow weight_row(int n, double tau, double alpha) {
    if (n < 1) throw HistoryError("weight row level must be at least 1");
    WeightRow row;
    row.level = n;
    row.alpha = alpha;
    row.tau = tau;
    row.w.reserve(n);
    for (int m = 1; m <= n; ++m) row.w.push_back(quad_weight(n, m, tau, alpha));
    return row;
}

double weight_row_sum_exact(int n, double tau, double alpha) {
    const double gamma1 = alpha + 1.0;
    return std::pow(tau, alpha) *
           (std::pow(static_cast<double>(n), gamma1) -
            std::pow(static_cast<double>(n - 1), gamma1)) /
           gamma_fn(2.0 + alpha);
}

GridFunction2D weighted_history_sum(const WeightRow& row, const HalfStepHistory& history,
                                    int count) {
    if (count < 0 || count > row.level || count > history.size())
        throw HistoryError("history length does not cover the requested weight range");
    if (count == 0) {
        if (history.size() == 0)
            throw HistoryError("cannot infer mesh from an empty history");
        return GridFunction2D(history.entry(1).mesh());
    }
    GridFunction2D acc(history.entry(1).mesh());
    for (int m = 1; m <= count; ++m) acc.axpy(row.w[m - 1], history.entry(m));
    return acc;
}

GridFunction2D memory_term(const WeightRow& row, const HalfStepHistory& history) {
    if (history.size() != row.level)
        throw HistoryError("history length " + std::to_string(history.size()) +
                           " does not match weight row level " + std::to_string(row.level));
    return weighted_history_sum(row, history, row.level);
}

GridFunction2D time_average(int n, const GridFunction2D& U1, const GridFunction2D& Un,
                            const GridFunction2D& Unm1) {
    if (n == 1) return U1;
    GridFunction2D avg = Un;
    avg += Unm1;
    avg *= 0.5;
    return avg;
}

}  // namespace vide
