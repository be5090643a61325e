#include "vide/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vide/harness.hpp"

namespace vide {

namespace {

// Flat key=value config support. CLI11 only processes config files on the top
// app, so the option lives there and the formatter re-parents every key onto
// the invoked subcommand. Keys dumped with empty values ("") are skipped.
struct FlatConfig : CLI::ConfigINI {
    std::string subcommand;

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::vector<CLI::ConfigItem> items = CLI::ConfigINI::from_config(input);
        std::vector<CLI::ConfigItem> kept;
        for (CLI::ConfigItem& item : items) {
            if (item.inputs.size() == 1 && item.inputs[0].empty()) continue;
            if (!subcommand.empty() && item.parents.empty())
                item.parents.push_back(subcommand);
            kept.push_back(std::move(item));
        }
        return kept;
    }
};

struct CommonOptions {
    std::string problem = "example1";
    std::vector<double> alphas = {0.5};
    double mu = -1.0;  // < 0 means "use the problem's own value"
    std::string scheme = "ttgcn";
    int nx = 100;
    int ny = 0;
    int N = 16;
    int k = 4;
    std::vector<int> N_ladder;
    std::vector<int> M_ladder;
    double T = 1.0;
    double picard_tol = 1e-12;
    int picard_max_iter = 100;
    double linear_tol = 1e-12;
    int linear_max_iter = 0;
    std::string protocol = "auto";
    std::string output;
    std::string format;
    bool dump_config = false;
};

std::vector<Scheme> parse_schemes(const std::string& s) {
    if (s == "ttgcn") return {Scheme::ttgcn};
    if (s == "scn") return {Scheme::scn};
    if (s == "both") return {Scheme::ttgcn, Scheme::scn};
    throw CLI::ValidationError("--scheme", "expected ttgcn, scn or both");
}

ErrorProtocol resolve_protocol(const std::string& s, const ProblemSpec& p,
                               bool allow_reference) {
    if (s == "exact") return ErrorProtocol::exact;
    if (s == "reference") {
        if (!allow_reference)
            throw ProtocolError("the reference protocol is not valid for this command");
        return ErrorProtocol::reference;
    }
    if (s == "auto") {
        if (p.has_exact()) return ErrorProtocol::exact;
        if (!allow_reference)
            throw ProtocolError(p.name +
                                " has no exact solution and this command cannot fall back "
                                "to the reference protocol");
        return ErrorProtocol::reference;
    }
    throw CLI::ValidationError("--error-protocol", "expected exact, reference or auto");
}

StudyOptions to_study_options(const CommonOptions& o) {
    StudyOptions s;
    s.Mx = o.nx;
    s.My = o.ny;
    s.k = o.k;
    s.T = o.T;
    s.picard_tol = o.picard_tol;
    s.picard_max_iter = o.picard_max_iter;
    s.linear_tol = o.linear_tol;
    s.linear_max_iter = o.linear_max_iter;
    return s;
}

ProblemSpec build_problem(const CommonOptions& o, double alpha) {
    ProblemSpec p = make_problem(o.problem, alpha);
    if (o.mu >= 0.0) p.mu = o.mu;  // overriding mu detaches any manufactured forcing
    p.T = o.T;
    return p;
}

void add_common_options(CLI::App* sub, CommonOptions& o, bool ladder_N, bool ladder_M) {
    sub->add_option("--problem", o.problem, "Problem name: example1|example2|example3")
        ->capture_default_str();
    sub->add_option("--alpha", o.alphas, "Kernel exponent(s) in (0,1)")
        ->capture_default_str();
    sub->add_option("--mu", o.mu, "Override the diffusion coefficient");
    sub->add_option("--scheme", o.scheme, "Scheme: ttgcn|scn|both")->capture_default_str();
    sub->add_option("--nx", o.nx, "Spatial cells in x")->capture_default_str();
    sub->add_option("--ny", o.ny, "Spatial cells in y (default: same as --nx)");
    sub->add_option("--k", o.k, "Coarse/fine time refinement ratio (>= 2)")
        ->capture_default_str();
    sub->add_option("--T", o.T, "Final time")->capture_default_str();
    if (ladder_N)
        sub->add_option("--N-ladder", o.N_ladder, "Coarse step counts, one per level");
    if (ladder_M)
        sub->add_option("--M-ladder", o.M_ladder, "Spatial cell counts, one per level");
    sub->add_option("--picard-tol", o.picard_tol, "Picard increment tolerance")
        ->capture_default_str();
    sub->add_option("--picard-max-iter", o.picard_max_iter, "Picard iteration cap")
        ->capture_default_str();
    sub->add_option("--linear-tol", o.linear_tol, "Linear-solve relative tolerance")
        ->capture_default_str();
    sub->add_option("--linear-max-iter", o.linear_max_iter,
                    "Linear iteration cap (0 = 10x unknown count)");
    sub->add_option("--error-protocol", o.protocol,
                    "Error measurement: exact|reference|auto")
        ->capture_default_str();
    sub->add_option("--output", o.output, "Output path (default: stdout)");
    sub->add_option("--format", o.format, "Output format: csv|json");
    sub->add_flag("--dump-config", o.dump_config,
                  "Print the effective configuration and exit");
    sub->fallthrough();  // lets --config after the subcommand reach the top app
}

template <typename Report>
void emit(const Report& report, const CommonOptions& o, const std::string& default_format) {
    std::string format = o.format.empty() ? default_format : o.format;
    if (format != "csv" && format != "json")
        throw CLI::ValidationError("--format", "expected csv or json");

    auto write = [&](std::ostream& os) {
        if (format == "csv")
            write_csv(report, os);
        else
            write_json(report, os);
    };
    if (o.output.empty()) {
        write(std::cout);
        return;
    }
    std::filesystem::path path(o.output);
    if (const char* dir = std::getenv("VIDE_OUTPUT_DIR"); dir && path.is_relative())
        path = std::filesystem::path(dir) / path;
    std::ofstream out(path);
    if (!out) throw CLI::ValidationError("--output", "cannot open " + path.string());
    write(out);
}

int dispatch_run(const CommonOptions& o) {
    if (o.alphas.size() != 1)
        throw CLI::ValidationError("--alpha", "run takes exactly one alpha");
    ProblemSpec p = build_problem(o, o.alphas[0]);
    StudyOptions opts = to_study_options(o);
    opts.protocol = resolve_protocol(o.protocol, p, true);

    ConvergenceReport report;
    report.problem = p.name;
    report.axis = "single";
    report.picard_tol = opts.picard_tol;
    report.linear_tol = opts.linear_tol;
    for (Scheme s : parse_schemes(o.scheme))
        report.rows.push_back(run_single(p, s, o.N, opts));
    emit(report, o, "json");
    return 0;
}

int dispatch_temporal(const CommonOptions& o) {
    if (o.N_ladder.empty())
        throw CLI::ValidationError("--N-ladder", "a temporal study needs a ladder of N");
    ConvergenceReport merged;
    merged.axis = "temporal";
    for (double alpha : o.alphas) {
        ProblemSpec p = build_problem(o, alpha);
        StudyOptions opts = to_study_options(o);
        opts.protocol = resolve_protocol(o.protocol, p, true);
        ConvergenceReport r =
            run_temporal_study(p, parse_schemes(o.scheme), o.k, o.N_ladder, opts);
        merged.problem = r.problem;
        merged.picard_tol = r.picard_tol;
        merged.linear_tol = r.linear_tol;
        merged.rows.insert(merged.rows.end(), r.rows.begin(), r.rows.end());
    }
    emit(merged, o, "csv");
    return 0;
}

int dispatch_spatial(const CommonOptions& o) {
    if (o.M_ladder.empty())
        throw CLI::ValidationError("--M-ladder", "a spatial study needs a ladder of M");
    ConvergenceReport merged;
    merged.axis = "spatial";
    for (double alpha : o.alphas) {
        ProblemSpec p = build_problem(o, alpha);
        StudyOptions opts = to_study_options(o);
        opts.protocol = resolve_protocol(o.protocol, p, false);
        ConvergenceReport r =
            run_spatial_study(p, parse_schemes(o.scheme), o.N, o.k, o.M_ladder, opts);
        merged.problem = r.problem;
        merged.picard_tol = r.picard_tol;
        merged.linear_tol = r.linear_tol;
        merged.rows.insert(merged.rows.end(), r.rows.begin(), r.rows.end());
    }
    emit(merged, o, "csv");
    return 0;
}

int dispatch_compare(const CommonOptions& o) {
    if (o.N_ladder.empty())
        throw CLI::ValidationError("--N-ladder", "compare needs a ladder of N");
    ComparisonReport merged;
    for (double alpha : o.alphas) {
        ProblemSpec p = build_problem(o, alpha);
        StudyOptions opts = to_study_options(o);
        opts.protocol = resolve_protocol(o.protocol, p, true);
        ComparisonReport r = compare_schemes(p, o.k, o.N_ladder, opts);
        merged.problem = r.problem;
        merged.as_convergence.problem = r.problem;
        merged.as_convergence.axis = "compare";
        merged.as_convergence.picard_tol = r.as_convergence.picard_tol;
        merged.as_convergence.linear_tol = r.as_convergence.linear_tol;
        merged.rows.insert(merged.rows.end(), r.rows.begin(), r.rows.end());
        merged.as_convergence.rows.insert(merged.as_convergence.rows.end(),
                                          r.as_convergence.rows.begin(),
                                          r.as_convergence.rows.end());
    }
    emit(merged, o, "csv");
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Crank-Nicolson and temporal two-grid solvers for the 2D nonlinear "
                 "Volterra integro-differential equation with weakly singular kernel"};
    app.require_subcommand(1);

    auto formatter = std::make_shared<FlatConfig>();
    for (int i = 1; i < argc && formatter->subcommand.empty(); ++i)
        for (const char* name : {"run", "temporal-study", "spatial-study", "compare"})
            if (argv[i] == std::string(name)) formatter->subcommand = name;
    app.config_formatter(formatter);
    app.set_config("--config", "", "Read options from a flat key=value file");

    CommonOptions run_o, temporal_o, spatial_o, compare_o;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a single experiment");
    run_cmd->add_option("--N", run_o.N, "Coarse time step count")->capture_default_str();
    add_common_options(run_cmd, run_o, false, false);

    CLI::App* temporal_cmd =
        app.add_subcommand("temporal-study", "Convergence study in time");
    add_common_options(temporal_cmd, temporal_o, true, false);

    CLI::App* spatial_cmd =
        app.add_subcommand("spatial-study", "Convergence study in space");
    spatial_cmd->add_option("--N", spatial_o.N, "Coarse time step count (held fixed)")
        ->capture_default_str();
    add_common_options(spatial_cmd, spatial_o, false, true);

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run both schemes and compare cost and accuracy");
    add_common_options(compare_cmd, compare_o, true, false);

    try {
        app.parse(argc, argv);

        auto maybe_dump = [&](CLI::App* sub, const CommonOptions& o) {
            if (!o.dump_config) return false;
            std::cout << sub->config_to_str(true, false);
            return true;
        };
        if (run_cmd->parsed())
            return maybe_dump(run_cmd, run_o) ? 0 : dispatch_run(run_o);
        if (temporal_cmd->parsed())
            return maybe_dump(temporal_cmd, temporal_o) ? 0 : dispatch_temporal(temporal_o);
        if (spatial_cmd->parsed())
            return maybe_dump(spatial_cmd, spatial_o) ? 0 : dispatch_spatial(spatial_o);
        if (compare_cmd->parsed())
            return maybe_dump(compare_cmd, compare_o) ? 0 : dispatch_compare(compare_o);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const NonConvergenceError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const ProtocolError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace vide
