#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vide/problems.hpp"
#include "vide/schemes.hpp"

namespace vide {

enum class Scheme { scn, ttgcn };

std::string scheme_name(Scheme s);

enum class ErrorProtocol {
    exact,      // compare against the sampled exact solution
    reference,  // compare against a run with both time steps halved
};

/// Max over n = 1..steps of the max-norm error against the exact solution
/// (the measure the reference result tables were produced with).
double discrete_error(const Trajectory& traj, const ProblemSpec& p);

/// Max-norm of U^N - Uref^{2N} at the final time; ref must be the same
/// spatial mesh with both time steps halved.
double reference_error(const Trajectory& traj, const Trajectory& ref);

double convergence_rate(double error_coarse, double error_fine);

struct LevelRecord {
    std::string scheme;
    double alpha = 0.0;
    int k = 0;
    double tau_C = 0.0;
    double tau_F = 0.0;
    double h = 0.0;
    double error = 0.0;
    std::optional<double> rate;
    double cpu_seconds = 0.0;
};

struct ConvergenceReport {
    std::string problem;
    std::string axis;  // "temporal" | "spatial" | "compare" | "single"
    std::vector<LevelRecord> rows;
    double picard_tol = 0.0;
    double linear_tol = 0.0;
    long total_cg_iterations = 0;
    long total_picard_iterations = 0;
};

struct StudyOptions {
    int Mx = 100;
    int My = 0;  // 0 -> same as Mx
    int k = 4;
    double T = 1.0;
    double picard_tol = 1e-12;
    int picard_max_iter = 100;
    double linear_tol = 1e-12;
    int linear_max_iter = 0;
    ErrorProtocol protocol = ErrorProtocol::exact;
};

/// One scheme run plus its error under the requested protocol.
LevelRecord run_single(const ProblemSpec& p, Scheme scheme, int N,
                       const StudyOptions& opts);

/// Refinement ladder in time (N doubles level to level in the paper's tables).
ConvergenceReport run_temporal_study(const ProblemSpec& p,
                                     const std::vector<Scheme>& schemes, int k,
                                     const std::vector<int>& N_ladder,
                                     const StudyOptions& opts);

/// Refinement ladder in space with the time steps held fixed.
ConvergenceReport run_spatial_study(const ProblemSpec& p,
                                    const std::vector<Scheme>& schemes, int N, int k,
                                    const std::vector<int>& M_ladder,
                                    const StudyOptions& opts);

struct ComparisonRow {
    double alpha = 0.0;
    int k = 0;
    double tau_C = 0.0;
    double tau_F = 0.0;
    double h = 0.0;
    double error_ttgcn = 0.0;
    double error_scn = 0.0;
    double cpu_ttgcn = 0.0;
    double cpu_scn = 0.0;
    double speedup = 0.0;  // cpu_scn / cpu_ttgcn
};

struct ComparisonReport {
    std::string problem;
    std::vector<ComparisonRow> rows;
    ConvergenceReport as_convergence;  // plot-ready per-scheme rows
};

/// Runs both schemes over the ladder and records errors, wall clock and speedup.
ComparisonReport compare_schemes(const ProblemSpec& p, int k,
                                 const std::vector<int>& N_ladder,
                                 const StudyOptions& opts);

void write_csv(const ConvergenceReport& report, std::ostream& os);
void write_json(const ConvergenceReport& report, std::ostream& os);
void write_csv(const ComparisonReport& report, std::ostream& os);
void write_json(const ComparisonReport& report, std::ostream& os);

}  // namespace vide
