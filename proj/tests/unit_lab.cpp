#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "plastiflow/config.hpp"
#include "plastiflow/convergence.hpp"
#include "plastiflow/csv.hpp"
#include "plastiflow/errors.hpp"
#include "plastiflow/potential.hpp"

using namespace plastiflow;

namespace {

Scenario sec52_scenario(int nx, double alpha) {
    Scenario sc;
    sc.grid = {1.0, nx};
    sc.surface = YieldSurface::interval(-1.0, 1.0);
    sc.alpha = alpha;
    sc.lambda = 1e3;
    sc.w_right = TimeFn::exponential(0.5);
    sc.sigma0 = SpaceFn::elastic_sigma(0.5);
    sc.v0 = SpaceFn::elastic_u(0.5);
    sc.u0 = SpaceFn::elastic_u(0.5);
    return sc;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("sweep on an elastic scenario reports zero distance everywhere") {
    SweepPlan plan;
    plan.base = sec52_scenario(64, 0.4);
    plan.base.w_right = TimeFn::sinusoid(0.05, 2.0, 0.0);
    plan.base.sigma0 = SpaceFn::constant(0.0);
    plan.base.v0 = SpaceFn::linear(0.0, 0.1);
    plan.base.u0 = SpaceFn::constant(0.0);
    plan.t_end = 0.5;
    plan.cells = {{0.4, 1e3, 0, 0.9}, {0.2, 1e3, 0, 0.9}};
    // v0(L) must match dwdot(0, L) = 0.05 * 2 * cos(0) = 0.1.
    const LimitReport rep = run_sweep(plan);
    for (const auto& c : rep.cells) {
        CHECK(!c.failed);
        CHECK(c.sup_d_global == doctest::Approx(0.0));
        CHECK(c.flow_residual_interior == doctest::Approx(0.0));
    }
    CHECK(rep.sup_d_monotone);
}

TEST_CASE("sweep trends on the plastic scenario; report serializes") {
    SweepPlan plan;
    plan.base = sec52_scenario(100, 0.4);
    plan.t_end = 1.2;
    plan.cells = {{0.4, 1e3, 0, 0.9}, {0.2, 1e3, 0, 0.9}, {0.1, 1e3, 0, 0.9}};
    plan.reference = EvolutionaryExact(1.0, 0.5, 2.0);
    const LimitReport rep = run_sweep(plan);
    for (const auto& c : rep.cells) CHECK(!c.failed);
    CHECK(rep.sup_d_monotone);
    CHECK(rep.h1_ratio_bounded);
    CHECK(rep.est_uni_fit > 0.0);
    CHECK(rep.cells[0].sup_d_interior > rep.cells[2].sup_d_interior);

    const std::string json = rep.to_json();
    CHECK(json.find("\"sup_d_interior\"") != std::string::npos);
    CHECK(json.find("\"h1_ratio\"") != std::string::npos);
    CHECK(json.find("\"est_uni_fit\"") != std::string::npos);
}

TEST_CASE("raising lambda beyond the observed distances changes nothing") {
    Trajectory runs[2];
    int k = 0;
    for (double lambda : {1e3, 1e6}) {
        Scenario sc = sec52_scenario(100, 0.2);
        sc.lambda = lambda;
        const Potential pot(sc.surface, sc.alpha, sc.lambda);
        DynamicSolver solver(sc, pot);
        RunOptions opt;
        opt.t_end = 1.0;
        runs[k++] = solver.run(opt);
    }
    CHECK(std::abs(runs[0].diag.sup_d_global - runs[1].diag.sup_d_global) <= 1e-12);
    CHECK(std::abs(runs[0].diag.sup_h1_sigma_interior - runs[1].diag.sup_h1_sigma_interior) <= 1e-12);
    CHECK(std::abs(runs[0].ledger.residual() - runs[1].ledger.residual()) <= 1e-12);
}

TEST_CASE("sweep plan validation") {
    SweepPlan plan;
    plan.base = sec52_scenario(64, 0.4);
    plan.cells = {{0.2, 1e3, 0, 0.9}, {0.4, 1e3, 0, 0.9}};  // alpha increasing: invalid
    CHECK_THROWS_AS(run_sweep(plan), ValidationError);

    plan.cells = {{0.4, 1e3, 0, 0.9}, {0.2, 1e2, 0, 0.9}};  // lambda decreasing: invalid
    CHECK_THROWS_AS(run_sweep(plan), ValidationError);

    plan.cells = {{0.4, 1e3, 0, 0.9}};
    plan.interior_window = {0.0, 0.8};  // touches the boundary: invalid
    CHECK_THROWS_AS(run_sweep(plan), ValidationError);
}

TEST_CASE("a failing cell is recorded and the sweep continues") {
    SweepPlan plan;
    plan.base = sec52_scenario(64, 0.4);
    plan.base.sigma0 = SpaceFn::constant(1.5);  // violates sigma0 in K
    plan.t_end = 0.3;
    plan.cells = {{0.4, 1e3, 0, 0.9}, {0.2, 1e3, 0, 0.9}};
    const LimitReport rep = run_sweep(plan);
    CHECK(rep.cells[0].failed);
    CHECK(rep.cells[1].failed);
    CHECK(rep.cells[0].error.find("sigma0") != std::string::npos);
}

TEST_CASE("flow-rule residual of an elastic trajectory vanishes") {
    Scenario sc = sec52_scenario(64, 0.4);
    sc.w_right = TimeFn::sinusoid(0.05, 2.0, 0.0);
    sc.sigma0 = SpaceFn::constant(0.0);
    sc.v0 = SpaceFn::linear(0.0, 0.1);
    sc.u0 = SpaceFn::constant(0.0);
    const Potential pot(sc.surface, sc.alpha, sc.lambda);
    DynamicSolver solver(sc, pot);
    RunOptions opt;
    opt.t_end = 0.5;
    opt.snapshot_times = {0.1, 0.2, 0.3, 0.4, 0.5};
    opt.with_ledger = false;
    Trajectory traj = solver.run(opt);
    CHECK(flow_rule_residual(traj.snapshots, sc.surface, 1, sc.grid.nx - 2) ==
          doctest::Approx(0.0));
}

TEST_CASE("boundary layer width is positive and small on the driven scenario") {
    Scenario sc = sec52_scenario(400, 0.05);
    const Potential pot(sc.surface, sc.alpha, sc.lambda);
    DynamicSolver solver(sc, pot);
    RunOptions opt;
    opt.t_end = 2.0;
    opt.dt = 0.9 * sc.grid.dx();
    opt.snapshot_times = {2.0};
    opt.with_ledger = false;
    Trajectory traj = solver.run(opt);
    const EvolutionaryExact ex(1.0, 0.5, 2.0);
    const double width = boundary_layer_width(traj.snapshots.back().state, sc.grid, ex);
    CHECK(width > 0.0);
    CHECK(width < 0.3);
}

TEST_CASE("PLASTIFLOW_THREADS caps sweep parallelism") {
    setenv("PLASTIFLOW_THREADS", "1", 1);
    CHECK(sweep_thread_cap() == 1);
    unsetenv("PLASTIFLOW_THREADS");
    CHECK(sweep_thread_cap() >= 1);
}

TEST_CASE("config round-trip and scenario construction") {
    const std::string text = R"(# demo
[domain]
length = 1.0
nx = 100

[material]
compliance = 0.5

[surface]
kind = interval
lo = -1.0
hi = 1.0

[potential]
alpha = 0.05
lambda = 1000

[boundary]
left = dirichlet
right = dirichlet
w_right = exponential 0.5

[initial]
sigma0 = elastic_sigma 0.5
v0 = elastic_u 0.5
u0 = elastic_u 0.5

[run]
seed = 42
)";
    const Config cfg = Config::parse_text(text);
    const Config again = Config::parse_text(cfg.serialize());
    CHECK(cfg == again);
    CHECK(Config::parse_text(again.serialize()) == again);

    const Scenario sc = cfg.to_scenario();
    CHECK(sc.grid.nx == 100);
    CHECK(sc.compliance == doctest::Approx(0.5));
    CHECK(sc.alpha == doctest::Approx(0.05));
    CHECK(sc.w_right.eval(1.0) == doctest::Approx(0.5 * std::exp(1.0)));
    CHECK(sc.sigma0.eval(1.0, 1.0) == doctest::Approx(0.5 * std::cosh(1.0) / std::sinh(1.0)));

    CHECK_THROWS_AS(Config::parse_text("key_without_section\n"), ValidationError);
    CHECK_THROWS_AS(Config::parse_text("[s]\nx = 1e\n").get_double("s", "x"), ValidationError);
}

TEST_CASE("time and space built-ins parse, evaluate and differentiate") {
    const TimeFn lin = TimeFn::parse("linear 1.0 2.0");
    CHECK(lin.eval(3.0) == doctest::Approx(7.0));
    CHECK(lin.deriv(3.0) == doctest::Approx(2.0));
    const TimeFn expo = TimeFn::parse("exponential 0.5");
    CHECK(expo.deriv(1.0) == doctest::Approx(expo.eval(1.0)));
    const TimeFn sinfn = TimeFn::parse("sinusoid 2.0 3.0 0.5");
    CHECK(sinfn.eval(0.4) == doctest::Approx(2.0 * std::sin(3.0 * 0.4 + 0.5)));
    CHECK(sinfn.deriv(0.4) == doctest::Approx(6.0 * std::cos(3.0 * 0.4 + 0.5)));
    CHECK(TimeFn::parse(lin.serialize()).eval(5.0) == doctest::Approx(lin.eval(5.0)));
    CHECK_THROWS_AS(TimeFn::parse("quadratic 1 2 3"), ValidationError);

    const SpaceFn es = SpaceFn::parse("elastic_sigma 0.5");
    CHECK(es.eval(0.3, 1.0) == doctest::Approx(0.5 * std::cosh(0.3) / std::sinh(1.0)));
    CHECK(SpaceFn::parse(es.serialize()).eval(0.7, 1.0) == doctest::Approx(es.eval(0.7, 1.0)));
}

TEST_CASE("CSV output is deterministic, with the documented schema") {
    Scenario sc = sec52_scenario(64, 0.2);
    const Potential pot(sc.surface, sc.alpha, sc.lambda);
    DynamicSolver solver(sc, pot);
    RunOptions opt;
    opt.t_end = 0.5;
    opt.probes = {0.5};
    Trajectory traj = solver.run(opt);

    const std::string p1 = "lab_csv_a.csv", p2 = "lab_csv_b.csv";
    write_trajectory_csv(p1, traj, sc);
    Trajectory traj2 = solver.run(opt);
    write_trajectory_csv(p2, traj2, sc);
    const std::string a = slurp(p1), b = slurp(p2);
    CHECK(a == b);
    CHECK(a.rfind("t,x,sigma,v,u,p,d_sigma,energy_residual\n", 0) == 0);
    std::remove(p1.c_str());
    std::remove(p2.c_str());

    // Stationary schema adds the boundary gap column.
    const std::string p3 = "lab_csv_c.csv";
    write_exact_csv(p3, StationaryExact(1.0, 1.0), sc.grid);
    const std::string c = slurp(p3);
    CHECK(c.rfind("t,x,sigma,v,u,p,d_sigma,energy_residual,boundary_gap\n", 0) == 0);
    std::remove(p3.c_str());
}
