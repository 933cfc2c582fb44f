// Scenario-driven front end: load a config, dispatch a solver or sweep, and
// emit CSV/JSON artifacts. Exit codes: 0 success, 1 validation error (the
// message names the violated invariant), 2 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "plastiflow/config.hpp"
#include "plastiflow/convergence.hpp"
#include "plastiflow/csv.hpp"
#include "plastiflow/dynamic_solver.hpp"
#include "plastiflow/errors.hpp"
#include "plastiflow/exact_solutions.hpp"
#include "plastiflow/potential.hpp"
#include "plastiflow/quasistatic.hpp"

namespace {

using namespace plastiflow;

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir = ".";
    std::optional<double> alpha, lambda, dt, t_end;
    std::optional<int> nx;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool scenario_required = true) {
    auto* opt = cmd->add_option("--scenario", args.scenario_path, "scenario config file");
    if (scenario_required) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--alpha", args.alpha, "override potential alpha");
    cmd->add_option("--lambda", args.lambda, "override potential lambda");
    cmd->add_option("--nx", args.nx, "override grid node count");
    cmd->add_option("--dt", args.dt, "override time step");
    cmd->add_option("--t-end", args.t_end, "override final time");
}

Scenario load_scenario(const CommonArgs& args, Config& cfg) {
    cfg = Config::parse_file(args.scenario_path);
    Scenario sc = cfg.to_scenario();
    if (args.alpha) sc.alpha = *args.alpha;
    if (args.lambda) sc.lambda = *args.lambda;
    if (args.nx) sc.grid.nx = *args.nx;
    return sc;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    std::filesystem::create_directories(args.out_dir);
    return (std::filesystem::path(args.out_dir) / name).string();
}

RunOptions run_options(const Config& cfg, const CommonArgs& args) {
    RunOptions opt;
    opt.t_end = args.t_end.value_or(cfg.get_double_or("run", "t_end", 1.0));
    if (args.dt)
        opt.dt = *args.dt;
    else if (cfg.has("run", "dt"))
        opt.dt = cfg.get_double("run", "dt");
    opt.dt_factor = cfg.get_double_or("run", "dt_factor", 0.9);
    opt.probes = cfg.get_list_or("run", "probes", {0.25, 0.5, 0.75});
    opt.snapshot_times = cfg.get_list_or("run", "snapshots", {});
    const auto window = cfg.get_list_or("run", "window", {0.2, 0.8});
    if (window.size() == 2) opt.interior_window = {window[0], window[1]};
    return opt;
}

int cmd_dynamic(const CommonArgs& args) {
    Config cfg;
    const Scenario sc = load_scenario(args, cfg);
    const Potential pot(sc.surface, sc.alpha, sc.lambda);
    DynamicSolver solver(sc, pot);
    const RunOptions opt = run_options(cfg, args);
    const Trajectory traj = solver.run(opt);
    write_trajectory_csv(out_path(args, "trajectory.csv"), traj, sc);
    if (!traj.snapshots.empty())
        write_snapshot_csv(out_path(args, "snapshots.csv"), traj, sc);
    std::printf("dynamic: %d steps, dt = %.6g\n", traj.steps, traj.dt);
    std::printf("  energy residual   %.6e (relative %.3e)\n", traj.ledger.residual(),
                std::abs(traj.ledger.residual()) / traj.ledger.scale());
    std::printf("  sup d(sigma)      global %.6g, interior %.6g\n", traj.diag.sup_d_global,
                traj.diag.sup_d_interior);
    std::printf("  flow-rule defect  interior %.6g\n", traj.diag.flow_residual_interior);
    std::printf("  interior H1       sigma %.6g, v %.6g\n", traj.diag.sup_h1_sigma_interior,
                traj.diag.sup_h1_v_interior);
    return 0;
}

int cmd_quasistatic(const CommonArgs& args) {
    Config cfg;
    const Scenario sc = load_scenario(args, cfg);
    const Potential pot(sc.surface, sc.alpha, sc.lambda);
    const double t_end = args.t_end.value_or(cfg.get_double_or("run", "t_end", 1.0));
    const double dt = args.dt.value_or(cfg.get_double_or("run", "dt", 1e-3));
    const QsResult qs = qs_evolve(sc, pot, dt, t_end);

    CsvWriter csv(out_path(args, "quasistatic.csv"));
    for (size_t k = 0; k < qs.t.size(); ++k) {
        // Stress and plastic density are spatially constant in the reduction;
        // one row per time with x at the midpoint.
        csv.row(qs.t[k], 0.5 * sc.grid.length, qs.theta[k], 0.0, 0.0, qs.p[k],
                sc.surface.distance(qs.theta[k]), qs.ledger_residual[k]);
    }
    std::printf("quasistatic: theta(%g) = %.10g, p = %.10g, ledger residual %.3e\n", t_end,
                qs.final_theta, qs.final_p, std::abs(qs.ledger_residual.back()));
    return 0;
}

int cmd_stationary(const CommonArgs& args) {
    Config cfg;
    const Scenario sc = load_scenario(args, cfg);
    const Potential pot(sc.surface, sc.alpha, sc.lambda);
    const StationaryResult res = solve_stationary(sc, pot);

    CsvWriter csv(out_path(args, "stationary.csv"), /*with_boundary_gap=*/true);
    for (int i = 0; i < sc.grid.nx; ++i) {
        csv.row_with_gap(0.0, sc.grid.x(i), res.sigma[(size_t)i], 0.0, res.u[(size_t)i],
                         res.p[(size_t)i], sc.surface.distance(res.sigma[(size_t)i]), 0.0,
                         i == sc.grid.nx - 1 ? res.boundary_gap : 0.0);
    }
    std::printf("stationary: sigma(L) = %.8g, u(L) gap = %.3e, residual %.3e, %d Newton iterations\n",
                res.sigma.back(), res.boundary_gap, res.residual_inf, res.newton_iterations);
    return 0;
}

int cmd_exact(const CommonArgs& args, int grid_n, const std::vector<double>& times) {
    Config cfg;
    const Scenario sc = load_scenario(args, cfg);
    Grid1D grid = sc.grid;
    if (grid_n > 0) grid.nx = grid_n;

    if (sc.w_right.kind == TimeFn::Kind::Exponential) {
        const double t_end = args.t_end.value_or(cfg.get_double_or("run", "t_end", 2.0));
        const EvolutionaryExact exact(sc.grid.length, sc.w_right.c0, t_end);
        std::vector<double> ts = times.empty() ? std::vector<double>{t_end} : times;
        write_exact_csv(out_path(args, "exact.csv"), exact, grid, ts);
        std::printf("exact (evolutionary): t0 = %.8g, boundary jump at T = %.8g\n", exact.t0(),
                    exact.boundary_jump(t_end));
    } else {
        const StationaryExact exact(sc.grid.length, sc.u_right);
        write_exact_csv(out_path(args, "exact.csv"), exact, grid);
        std::printf("exact (stationary): regime %s, boundary atom %.8g\n",
                    exact.regime() == StationaryExact::Regime::Elastic ? "elastic" : "plastic-boundary",
                    exact.boundary_atom());
    }
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    Config cfg;
    const Scenario sc = load_scenario(args, cfg);
    SweepPlan plan;
    plan.base = sc;
    plan.cells = cfg.sweep_cells();
    plan.t_end = args.t_end.value_or(cfg.get_double_or("run", "t_end", 1.0));
    const auto window = cfg.get_list_or("run", "window", {0.2, 0.8});
    if (window.size() == 2) plan.interior_window = {window[0], window[1]};
    plan.probes = cfg.get_list_or("run", "probes", {});
    const std::string mode = cfg.get_or("sweep", "mode", "dynamic");
    plan.mode = mode == "quasistatic" ? SweepMode::Quasistatic : SweepMode::Dynamic;
    if (sc.w_right.kind == TimeFn::Kind::Exponential && plan.mode == SweepMode::Dynamic)
        plan.reference = EvolutionaryExact(sc.grid.length, sc.w_right.c0, plan.t_end);

    const LimitReport report = run_sweep(plan);
    const std::string json_path = out_path(args, "sweep_report.json");
    std::ofstream(json_path) << report.to_json();
    std::printf("sweep: %zu cells -> %s\n", report.cells.size(), json_path.c_str());
    int failed = 0;
    for (const auto& c : report.cells) {
        if (c.failed) {
            ++failed;
            std::printf("  cell %d (alpha=%g): FAILED %s\n", c.id, c.alpha, c.error.c_str());
        } else {
            std::printf("  cell %d: alpha=%-6g sup_d_int=%.4g flow=%.4g h1_sigma=%.4g\n", c.id,
                        c.alpha, c.sup_d_interior, c.flow_residual_interior, c.h1_sigma_interior);
        }
    }
    if (failed) {
        std::fprintf(stderr, "sweep: %d cell(s) failed\n", failed);
        return 2;
    }
    return 0;
}

int cmd_verify_geometry(const std::string& kind, double p, double radius, int dim, int samples,
                        std::uint64_t seed, const std::string& out_dir) {
    YieldSurface surf = YieldSurface::interval(-1, 1);
    if (kind == "hosford")
        surf = YieldSurface::hosford(dim, p);
    else if (kind == "vonmises")
        surf = YieldSurface::vonmises(dim, radius);
    else if (kind != "interval")
        throw ValidationError("verify-geometry supports interval, vonmises and hosford kinds");

    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / "geometry_report.json").string();
    std::ofstream out(path);
    out << "{\n  \"kind\": \"" << surf.kind_name() << "\",\n";
    out << "  \"r_K\": " << surf.inner_radius() << ",\n";
    out << "  \"R_K\": " << surf.outer_radius() << ",\n";
    const auto curvature = surf.estimate_curvature(samples, seed);
    if (curvature) {
        out << "  \"min_curvature_quotient\": " << *curvature << ",\n";
        out << "  \"samples\": " << samples << "\n}\n";
        std::printf("verify-geometry %s: r_K=%.8g R_K=%.8g min curvature quotient=%.8g (%d samples)\n",
                    surf.kind_name().c_str(), surf.inner_radius(), surf.outer_radius(), *curvature,
                    samples);
        if (!(*curvature > 0)) return 2;
    } else {
        out << "  \"min_curvature_quotient\": \"not applicable, 1D\"\n}\n";
        std::printf("verify-geometry %s: flat 1D boundary, curvature not applicable\n",
                    surf.kind_name().c_str());
    }
    std::printf("report: %s\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D Norton-Hoff plasticity laboratory"};
    app.require_subcommand(1);

    CommonArgs dyn_args, qs_args, st_args, ex_args, sw_args;
    int exact_grid = 0;
    std::vector<double> exact_times;

    std::string vg_kind = "hosford";
    double vg_p = 4.0, vg_radius = 1.0;
    int vg_dim = 3, vg_samples = 10000;
    std::uint64_t vg_seed = 42;
    std::string vg_out = ".";

    auto* dyn = app.add_subcommand("dynamic", "time integration of the dynamic system");
    add_common(dyn, dyn_args);
    auto* qs = app.add_subcommand("quasistatic", "scalar ODE reduction of the quasi-static system");
    add_common(qs, qs_args);
    auto* st = app.add_subcommand("stationary", "two-point stationary problem");
    add_common(st, st_args);
    auto* ex = app.add_subcommand("exact", "closed-form fields on a grid");
    add_common(ex, ex_args);
    ex->add_option("--grid", exact_grid, "node count for the exact dump");
    ex->add_option("--times", exact_times, "sample times (evolutionary)");
    auto* sw = app.add_subcommand("sweep", "(alpha, lambda) sweep with limit diagnostics");
    add_common(sw, sw_args);
    auto* vg = app.add_subcommand("verify-geometry", "yield-surface curvature and axiom report");
    vg->add_option("--surface", vg_kind, "interval | vonmises | hosford");
    vg->add_option("--p", vg_p, "Hosford exponent");
    vg->add_option("--radius", vg_radius, "von Mises radius");
    vg->add_option("--dim", vg_dim, "spatial dimension (2 or 3)");
    vg->add_option("--samples", vg_samples, "boundary samples");
    vg->add_option("--seed", vg_seed, "sampling seed");
    vg->add_option("--out", vg_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dyn->parsed()) return cmd_dynamic(dyn_args);
        if (qs->parsed()) return cmd_quasistatic(qs_args);
        if (st->parsed()) return cmd_stationary(st_args);
        if (ex->parsed()) return cmd_exact(ex_args, exact_grid, exact_times);
        if (sw->parsed()) return cmd_sweep(sw_args);
        if (vg->parsed())
            return cmd_verify_geometry(vg_kind, vg_p, vg_radius, vg_dim, vg_samples, vg_seed, vg_out);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 2;
    }
    return 0;
}
