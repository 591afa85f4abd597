#include "avlab/runner.hpp"

#include "avlab/constants.hpp"
#include "avlab/field_io.hpp"
#include "avlab/radial.hpp"
#include "avlab/solvers.hpp"
#include "avlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace avlab {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out);
    const fs::path path = fs::path(cfg.out) / name;
    std::ofstream f(path);
    if (!f) throw Error("cannot open output file " + path.string());
    if (cfg.timestamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        f << "# generated " << buf << '\n';
    }
    return f;
}

void echo_config(const RunConfig& cfg) {
    fs::create_directories(cfg.out);
    std::ofstream f(fs::path(cfg.out) / "resolved_config.txt");
    f << cfg.resolved();
}

std::shared_ptr<const GridDomain> make_grid(const RunConfig& cfg) {
    return build_grid(cfg.domain_spec(), cfg.h);
}

ScalarField synthesize(const RunConfig& cfg, std::shared_ptr<const GridDomain> dom) {
    if (cfg.kind == "noise") return random_smooth_field(std::move(dom), cfg.seed);
    return bump_field(std::move(dom));
}

ScalarField obtain_field(const RunConfig& cfg, std::shared_ptr<const GridDomain> dom) {
    if (cfg.field.empty()) return synthesize(cfg, std::move(dom));
    return attach(read_field(cfg.field), std::move(dom));
}

SolveConfig solver_config(const RunConfig& cfg, std::shared_ptr<const GridDomain> dom) {
    SolveConfig sc;
    sc.grid = std::move(dom);
    sc.p = cfg.p;
    sc.q = cfg.q;
    sc.lambda = cfg.lambda;
    sc.m = cfg.m;
    sc.max_iter = cfg.max_iter;
    sc.tol_rel = cfg.tol_rel;
    sc.restarts = cfg.restarts;
    sc.seed = cfg.seed;
    sc.classical = cfg.classical;
    sc.allow_critical = cfg.allow_critical;
    return sc;
}

void write_trace(const RunConfig& cfg, const std::string& name,
                 const std::vector<double>& trace) {
    std::ofstream f = open_out(cfg, name);
    f << "iteration,level\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        f << i << ',' << format_g17(trace[i]) << '\n';
}

int run_constants(const RunConfig& cfg) {
    std::ofstream f = open_out(cfg, "constants.csv");
    f << "name,value\n";
    for (int k = 0; k <= cfg.n + static_cast<int>(std::ceil(cfg.p)); ++k)
        f << "omega_" << k << ',' << format_g17(omega(k)) << '\n';
    f << "alpha_np," << format_g17(alpha_np(cfg.n, cfg.p)) << '\n';
    if (cfg.p >= 1.0 && cfg.p < cfg.n) {
        f << "k_np," << format_g17(k_np(cfg.n, cfg.p)) << '\n';
        f << "mu_critical," << format_g17(mu_critical(cfg.n, cfg.p)) << '\n';
        f << "k_threshold," << format_g17(std::pow(k_np(cfg.n, cfg.p), -cfg.p)) << '\n';
    }
    return kOk;
}

int run_energy(const RunConfig& cfg) {
    auto dom = make_grid(cfg);
    const ScalarField u = obtain_field(cfg, dom);
    const DirectionSet ds = directions(cfg.n, cfg.m > 0 ? cfg.m : (cfg.n == 2 ? 128 : 266));
    const EnergyReport rep = energy_report(u, ds, cfg.p);
    std::ofstream f = open_out(cfg, "energy.csv");
    f << "n,p,m,E,grad_norm,min_psi,degenerate\n";
    f << cfg.n << ',' << format_g17(cfg.p) << ',' << ds.size() << ','
      << format_g17(rep.energy) << ',' << format_g17(rep.grad_norm) << ','
      << format_g17(rep.min_psi) << ',' << (rep.degenerate ? 1 : 0) << '\n';
    return kOk;
}

int run_eigen(const RunConfig& cfg) {
    auto dom = make_grid(cfg);
    const EigenResult res = principal_eigen(solver_config(cfg, dom));
    std::ofstream f = open_out(cfg, "eigen.csv");
    f << "n,p,m,eigenvalue,restarts\n";
    f << cfg.n << ',' << format_g17(cfg.p) << ',' << cfg.m << ','
      << format_g17(res.eigenvalue) << ',' << res.restart_levels.size() << '\n';
    write_trace(cfg, "eigen_trace.csv", res.trace);
    write_field((fs::path(cfg.out) / "eigenfunction.field").string(), res.eigenfunction);
    return kOk;
}

int run_solve(const RunConfig& cfg) {
    auto dom = make_grid(cfg);
    const SolveResult res = least_energy(solver_config(cfg, dom));
    std::ofstream f = open_out(cfg, "solve.csv");
    f << "n,p,q,lambda,level,el_residual,positivity_fraction\n";
    const double q = cfg.q > 0.0 ? cfg.q : cfg.n * cfg.p / (cfg.n - cfg.p);
    f << cfg.n << ',' << format_g17(cfg.p) << ',' << format_g17(q) << ','
      << format_g17(cfg.lambda) << ',' << format_g17(res.level) << ','
      << format_g17(res.el_residual) << ',' << format_g17(res.positivity_fraction) << '\n';
    write_trace(cfg, "solve_trace.csv", res.trace);
    write_field((fs::path(cfg.out) / "minimizer.field").string(), res.minimizer);
    write_field((fs::path(cfg.out) / "solution.field").string(), res.rescaled_solution);
    return kOk;
}

int run_scan(const RunConfig& cfg) {
    const auto rows = scan_lambda(cfg.n, cfg.p, cfg.radius, cfg.radial_nodes, cfg.lambda_min,
                                  cfg.lambda_max, cfg.lambda_steps);
    std::ofstream f = open_out(cfg, "scan.csv");
    f << "lambda,level,below_K_threshold\n";
    for (const ScanRow& r : rows)
        f << format_g17(r.lambda) << ',' << format_g17(r.level) << ','
          << (r.below_threshold ? 1 : 0) << '\n';
    return kOk;
}

int run_verify(const RunConfig& cfg) {
    SuiteOptions opts;
    opts.level = cfg.level == "full" ? SuiteLevel::Full : SuiteLevel::Fast;
    opts.seed = cfg.seed;
    const auto reports = run_suite(opts);

    std::ofstream f = open_out(cfg, "verify.csv");
    f << "name,statement,measured,tolerance,pass,note\n";
    for (const CheckReport& r : reports)
        f << r.name << ",\"" << r.statement << "\"," << format_g17(r.measured) << ','
          << format_g17(r.tolerance) << ',' << (r.pass ? 1 : 0) << ",\"" << r.note << "\"\n";

    std::ofstream txt = open_out(cfg, "verify.txt");
    for (const CheckReport& r : reports) {
        txt << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  measured "
            << format_g17(r.measured) << "  tol " << format_g17(r.tolerance);
        if (!r.note.empty()) txt << "  (" << r.note << ')';
        txt << '\n';
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << '\n';
    }
    return all_pass(reports) ? kOk : kVerifyFailure;
}

int run_dump_field(const RunConfig& cfg) {
    auto dom = make_grid(cfg);
    const ScalarField u = synthesize(cfg, dom);
    fs::create_directories(cfg.out);
    write_field((fs::path(cfg.out) / (cfg.output + ".field")).string(), u);
    return kOk;
}

int run_heatmap(const RunConfig& cfg) {
    const FieldData data = read_field(cfg.field);
    // the pixmap needs the raw lattice only; rebuild a bare grid carrier
    auto dom = std::make_shared<GridDomain>();
    dom->dim = data.dim;
    dom->h = data.h;
    dom->shape = data.shape;
    dom->origin = data.origin;
    dom->inside_mask.assign(static_cast<std::size_t>(data.values.size()), 1);
    dom->cell_volume = std::pow(data.h, data.dim);
    ScalarField u;
    u.dom = dom;
    u.values = data.values;
    fs::create_directories(cfg.out);
    write_pgm((fs::path(cfg.out) / (cfg.output + ".pgm")).string(), u);
    return kOk;
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        validate_config(cfg);
        echo_config(cfg);
        if (cfg.subcommand == "constants") return run_constants(cfg);
        if (cfg.subcommand == "energy") return run_energy(cfg);
        if (cfg.subcommand == "eigen") return run_eigen(cfg);
        if (cfg.subcommand == "solve") return run_solve(cfg);
        if (cfg.subcommand == "scan-lambda") return run_scan(cfg);
        if (cfg.subcommand == "verify") return run_verify(cfg);
        if (cfg.subcommand == "dump-field") return run_dump_field(cfg);
        if (cfg.subcommand == "heatmap") return run_heatmap(cfg);
        throw ValidationError("unknown subcommand '" + cfg.subcommand + "'");
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericError;
    }
}

}  // namespace avlab
