#include "vide/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace vide {

namespace {

using json = nlohmann::ordered_json;

SchemeConfig make_config(const ProblemSpec& p, int N, const StudyOptions& opts, int Mx,
                         int My) {
    SchemeConfig cfg;
    cfg.mesh = build_spatial_mesh(p.Lx, p.Ly, Mx, My);
    cfg.time = build_temporal_pair(opts.T, N, opts.k);
    cfg.picard_tol = opts.picard_tol;
    cfg.picard_max_iter = opts.picard_max_iter;
    cfg.linear_tol = opts.linear_tol;
    cfg.linear_max_iter = opts.linear_max_iter;
    return cfg;
}

struct TimedRun {
    Trajectory fine;
    double seconds = 0.0;
    long picard_total = 0;
    long cg_total = 0;
};

void accumulate(TimedRun& run, const Trajectory& traj) {
    for (const StepStats& s : traj.steps) {
        run.picard_total += s.picard_iterations;
        run.cg_total += s.cg_iterations;
    }
}

TimedRun timed_run(const ProblemSpec& p, Scheme scheme, const SchemeConfig& cfg) {
    TimedRun run;
    const auto t0 = std::chrono::steady_clock::now();
    if (scheme == Scheme::scn) {
        run.fine = run_scn(p, cfg);
        accumulate(run, run.fine);
    } else {
        TtgcnRun tg = run_ttgcn(p, cfg);
        accumulate(run, tg.coarse);
        accumulate(run, tg.fine);
        run.fine = std::move(tg.fine);
    }
    run.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

LevelRecord run_single_impl(const ProblemSpec& p, Scheme scheme, int N,
                            const StudyOptions& opts, long* picard_total,
                            long* cg_total) {
    const int My = opts.My > 0 ? opts.My : opts.Mx;
    const SchemeConfig cfg = make_config(p, N, opts, opts.Mx, My);
    TimedRun run = timed_run(p, scheme, cfg);

    double error;
    if (opts.protocol == ErrorProtocol::exact) {
        error = discrete_error(run.fine, p);
    } else {
        const SchemeConfig ref_cfg = make_config(p, 2 * N, opts, opts.Mx, My);
        TimedRun ref = timed_run(p, scheme, ref_cfg);  // not counted in cpu_seconds
        error = reference_error(run.fine, ref.fine);
    }
    if (picard_total) *picard_total += run.picard_total;
    if (cg_total) *cg_total += run.cg_total;

    LevelRecord rec;
    rec.scheme = scheme_name(scheme);
    rec.alpha = p.alpha;
    rec.k = cfg.time.k;
    rec.tau_C = cfg.time.tau_C;
    rec.tau_F = cfg.time.tau_F;
    rec.h = std::max(cfg.mesh.h1, cfg.mesh.h2);
    rec.error = error;
    rec.cpu_seconds = run.seconds;
    return rec;
}

}  // namespace

std::string scheme_name(Scheme s) { return s == Scheme::scn ? "SCN" : "TTGCN"; }

// The tabulated reference results were produced with the maximum norm, not
// the displayed discrete L2 norm (for the manufactured solutions the latter
// comes out exactly a factor ||sin sin|| = 1/2 smaller). The exact-solution
// protocol maximises over all levels; the self-referencing protocol compares
// final states only, otherwise the early transient near the kernel
// singularity would dominate by orders of magnitude.
double discrete_error(const Trajectory& traj, const ProblemSpec& p) {
    if (!p.has_exact())
        throw ProtocolError("problem has no exact solution; use the reference protocol");
    double err = 0.0;
    for (int n = 1; n <= traj.step_count(); ++n) {
        const double t = n * traj.dt;
        GridFunction2D exact = GridFunction2D::sample(
            traj.mesh, [&](double x, double y) { return p.exact(x, y, t); });
        exact -= traj.states[n];
        err = std::max(err, max_norm(exact));
    }
    return err;
}

double reference_error(const Trajectory& traj, const Trajectory& ref) {
    if (!(traj.mesh == ref.mesh))
        throw ProtocolError("reference trajectory lives on a different spatial mesh");
    if (ref.step_count() != 2 * traj.step_count() ||
        std::abs(ref.dt * 2.0 - traj.dt) > 1e-12 * traj.dt)
        throw ProtocolError("reference time mesh is not the 2x refinement of the base mesh");
    return max_norm(traj.states.back() - ref.states.back());
}

double convergence_rate(double error_coarse, double error_fine) {
    if (!(error_coarse > 0.0) || !(error_fine > 0.0))
        throw DomainError("convergence rate is undefined for non-positive errors");
    return std::log2(error_coarse / error_fine);
}

LevelRecord run_single(const ProblemSpec& p, Scheme scheme, int N,
                       const StudyOptions& opts) {
    return run_single_impl(p, scheme, N, opts, nullptr, nullptr);
}

ConvergenceReport run_temporal_study(const ProblemSpec& p,
                                     const std::vector<Scheme>& schemes, int k,
                                     const std::vector<int>& N_ladder,
                                     const StudyOptions& opts) {
    StudyOptions o = opts;
    o.k = k;
    ConvergenceReport report;
    report.problem = p.name;
    report.axis = "temporal";
    report.picard_tol = o.picard_tol;
    report.linear_tol = o.linear_tol;
    for (Scheme s : schemes) {
        double prev_error = 0.0;
        for (std::size_t l = 0; l < N_ladder.size(); ++l) {
            LevelRecord rec =
                run_single_impl(p, s, N_ladder[l], o, &report.total_picard_iterations,
                                &report.total_cg_iterations);
            if (l > 0) rec.rate = convergence_rate(prev_error, rec.error);
            prev_error = rec.error;
            report.rows.push_back(std::move(rec));
        }
    }
    return report;
}

ConvergenceReport run_spatial_study(const ProblemSpec& p,
                                    const std::vector<Scheme>& schemes, int N, int k,
                                    const std::vector<int>& M_ladder,
                                    const StudyOptions& opts) {
    if (opts.protocol != ErrorProtocol::exact)
        throw ProtocolError("spatial studies require an exact solution");
    StudyOptions o = opts;
    o.k = k;
    ConvergenceReport report;
    report.problem = p.name;
    report.axis = "spatial";
    report.picard_tol = o.picard_tol;
    report.linear_tol = o.linear_tol;
    for (Scheme s : schemes) {
        double prev_error = 0.0;
        for (std::size_t l = 0; l < M_ladder.size(); ++l) {
            o.Mx = M_ladder[l];
            o.My = M_ladder[l];
            LevelRecord rec = run_single_impl(p, s, N, o, &report.total_picard_iterations,
                                              &report.total_cg_iterations);
            if (l > 0) rec.rate = convergence_rate(prev_error, rec.error);
            prev_error = rec.error;
            report.rows.push_back(std::move(rec));
        }
    }
    return report;
}

ComparisonReport compare_schemes(const ProblemSpec& p, int k,
                                 const std::vector<int>& N_ladder,
                                 const StudyOptions& opts) {
    ComparisonReport report;
    report.problem = p.name;
    report.as_convergence =
        run_temporal_study(p, {Scheme::ttgcn, Scheme::scn}, k, N_ladder, opts);
    const std::size_t L = N_ladder.size();
    for (std::size_t l = 0; l < L; ++l) {
        const LevelRecord& tg = report.as_convergence.rows[l];
        const LevelRecord& sc = report.as_convergence.rows[L + l];
        ComparisonRow row;
        row.alpha = tg.alpha;
        row.k = tg.k;
        row.tau_C = tg.tau_C;
        row.tau_F = tg.tau_F;
        row.h = tg.h;
        row.error_ttgcn = tg.error;
        row.error_scn = sc.error;
        row.cpu_ttgcn = tg.cpu_seconds;
        row.cpu_scn = sc.cpu_seconds;
        row.speedup = sc.cpu_seconds / tg.cpu_seconds;
        report.rows.push_back(row);
    }
    return report;
}

void write_csv(const ConvergenceReport& report, std::ostream& os) {
    os << "scheme,alpha,k,tau_C,tau_F,h,error,rate,cpu_seconds\n";
    for (const LevelRecord& r : report.rows) {
        os << r.scheme << ',' << fmt17(r.alpha) << ',' << r.k << ',' << fmt17(r.tau_C)
           << ',' << fmt17(r.tau_F) << ',' << fmt17(r.h) << ',' << fmt17(r.error) << ',';
        if (r.rate) os << fmt17(*r.rate);
        os << ',' << fmt17(r.cpu_seconds) << '\n';
    }
}

namespace {

json report_to_json(const ConvergenceReport& report) {
    json rows = json::array();
    for (const LevelRecord& r : report.rows) {
        json row;
        row["scheme"] = r.scheme;
        row["alpha"] = r.alpha;
        row["k"] = r.k;
        row["tau_C"] = r.tau_C;
        row["tau_F"] = r.tau_F;
        row["h"] = r.h;
        row["error"] = r.error;
        if (r.rate)
            row["rate"] = *r.rate;
        else
            row["rate"] = nullptr;
        row["cpu_seconds"] = r.cpu_seconds;
        rows.push_back(row);
    }
    json j;
    j["problem"] = report.problem;
    j["axis"] = report.axis;
    j["picard_tol"] = report.picard_tol;
    j["linear_tol"] = report.linear_tol;
    j["rows"] = rows;
    return j;
}

}  // namespace

void write_json(const ConvergenceReport& report, std::ostream& os) {
    os << report_to_json(report).dump(2) << '\n';
}

void write_csv(const ComparisonReport& report, std::ostream& os) {
    write_csv(report.as_convergence, os);
}

void write_json(const ComparisonReport& report, std::ostream& os) {
    json j = report_to_json(report.as_convergence);
    json cmp = json::array();
    for (const ComparisonRow& r : report.rows) {
        json row;
        row["alpha"] = r.alpha;
        row["k"] = r.k;
        row["tau_C"] = r.tau_C;
        row["tau_F"] = r.tau_F;
        row["h"] = r.h;
        row["error_ttgcn"] = r.error_ttgcn;
        row["error_scn"] = r.error_scn;
        row["cpu_ttgcn"] = r.cpu_ttgcn;
        row["cpu_scn"] = r.cpu_scn;
        row["speedup"] = r.speedup;
        cmp.push_back(row);
    }
    j["comparison"] = cmp;
    os << j.dump(2) << '\n';
}

}  // namespace vide
