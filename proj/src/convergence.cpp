#include "plastiflow/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "plastiflow/errors.hpp"
#include "plastiflow/potential.hpp"
#include "plastiflow/quasistatic.hpp"

namespace plastiflow {

void SweepPlan::validate() const {
    if (cells.empty()) throw ValidationError("sweep plan has no cells");
    for (size_t i = 1; i < cells.size(); ++i) {
        if (!(cells[i].alpha < cells[i - 1].alpha))
            throw ValidationError("sweep plan invariant violated: alpha must be strictly decreasing");
        if (cells[i].lambda < cells[i - 1].lambda)
            throw ValidationError("sweep plan invariant violated: lambda must be nondecreasing");
    }
    if (!(interior_window.first > 0 && interior_window.second < 1 &&
          interior_window.first < interior_window.second))
        throw ValidationError("sweep plan invariant violated: interior window must be strictly interior");
}

int sweep_thread_cap() {
#ifdef _OPENMP
    int cap = omp_get_max_threads();
#else
    int cap = 1;
#endif
    if (const char* env = std::getenv("PLASTIFLOW_THREADS")) {
        const int req = std::atoi(env);
        if (req > 0) cap = std::min(cap, req);
    }
    return cap;
}

namespace {

CellReport run_cell(const SweepPlan& plan, const SweepCell& cell, int id) {
    CellReport rep;
    rep.id = id;
    rep.alpha = cell.alpha;
    rep.lambda = cell.lambda;
    try {
        Scenario sc = plan.base;
        sc.alpha = cell.alpha;
        sc.lambda = cell.lambda;
        if (cell.nx > 0) sc.grid.nx = cell.nx;
        const Potential pot(sc.surface, sc.alpha, sc.lambda);

        if (plan.mode == SweepMode::Dynamic) {
            DynamicSolver solver(sc, pot);
            RunOptions opt;
            opt.t_end = plan.t_end;
            opt.dt_factor = cell.dt_factor;
            opt.interior_window = plan.interior_window;
            opt.probes = plan.probes;
            // Cells already run concurrently; keep each run serial inside.
            opt.parallel = false;
            if (plan.reference) opt.snapshot_times = {plan.t_end};
            Trajectory traj = solver.run(opt);
            rep.sup_d_global = traj.diag.sup_d_global;
            rep.sup_d_interior = traj.diag.sup_d_interior;
            rep.flow_residual_interior = traj.diag.flow_residual_interior;
            rep.h1_sigma_interior = traj.diag.sup_h1_sigma_interior;
            rep.h1_v_interior = traj.diag.sup_h1_v_interior;
            rep.h1_sigma_boundary = traj.diag.sup_h1_sigma_boundary;
            rep.energy_residual_rel = std::abs(traj.ledger.residual()) / traj.ledger.scale();
            rep.est_uni = traj.diag.sup_est_uni;
            rep.est_uni_scaled = rep.est_uni / (1.0 + 1.0 / cell.alpha);
            if (plan.reference && !traj.snapshots.empty())
                rep.boundary_layer_width =
                    boundary_layer_width(traj.snapshots.back().state, sc.grid, *plan.reference);
        } else {
            const double dt = 1e-3;
            QsResult qs = qs_evolve(sc, pot, dt, plan.t_end);
            double supd = 0;
            for (double th : qs.theta) supd = std::max(supd, sc.surface.distance(th));
            rep.sup_d_global = rep.sup_d_interior = supd;
            double res = 0;
            for (double r : qs.ledger_residual) res = std::max(res, std::abs(r));
            rep.energy_residual_rel = res;
        }
    } catch (const Error& e) {
        rep.failed = true;
        rep.error = e.what();
    }
    return rep;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

LimitReport run_sweep(const SweepPlan& plan) {
    plan.validate();
    LimitReport report;
    report.cells.resize(plan.cells.size());

    const int cap = sweep_thread_cap();
#pragma omp parallel for schedule(dynamic) num_threads(cap)
    for (int i = 0; i < static_cast<int>(plan.cells.size()); ++i)
        report.cells[static_cast<size_t>(i)] = run_cell(plan, plan.cells[static_cast<size_t>(i)], i);

    // Trend assertions with 10% slack to absorb discretization noise.
    double h1_min = std::numeric_limits<double>::max(), h1_max = 0;
    for (size_t i = 0; i < report.cells.size(); ++i) {
        const CellReport& c = report.cells[i];
        if (c.failed) continue;
        h1_min = std::min(h1_min, c.h1_sigma_interior);
        h1_max = std::max(h1_max, c.h1_sigma_interior);
        report.est_uni_fit = std::max(report.est_uni_fit, c.est_uni_scaled);
        if (i > 0 && !report.cells[i - 1].failed &&
            c.sup_d_interior > 1.1 * report.cells[i - 1].sup_d_interior)
            report.sup_d_monotone = false;
    }
    if (h1_min > 0 && h1_max > 0) {
        report.h1_ratio = h1_max / h1_min;
        report.h1_ratio_bounded = report.h1_ratio <= 10.0;
    }
    return report;
}

std::string LimitReport::to_json() const {
    std::ostringstream out;
    out << "{\n  \"cells\": [\n";
    for (size_t i = 0; i < cells.size(); ++i) {
        const CellReport& c = cells[i];
        out << "    {\"id\": " << c.id << ", \"alpha\": " << fmt(c.alpha)
            << ", \"lambda\": " << fmt(c.lambda) << ", \"failed\": " << (c.failed ? "true" : "false");
        if (c.failed) {
            std::string msg = c.error;
            for (auto& ch : msg)
                if (ch == '"') ch = '\'';
            out << ", \"error\": \"" << msg << "\"";
        } else {
            out << ", \"sup_d_global\": " << fmt(c.sup_d_global)
                << ", \"sup_d_interior\": " << fmt(c.sup_d_interior)
                << ", \"flow_residual_interior\": " << fmt(c.flow_residual_interior)
                << ", \"h1_sigma_interior\": " << fmt(c.h1_sigma_interior)
                << ", \"h1_v_interior\": " << fmt(c.h1_v_interior)
                << ", \"h1_sigma_boundary\": " << fmt(c.h1_sigma_boundary)
                << ", \"energy_residual_rel\": " << fmt(c.energy_residual_rel)
                << ", \"boundary_layer_width\": " << fmt(c.boundary_layer_width)
                << ", \"est_uni\": " << fmt(c.est_uni)
                << ", \"est_uni_scaled\": " << fmt(c.est_uni_scaled);
        }
        out << "}" << (i + 1 < cells.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    out << "  \"sup_d_monotone\": " << (sup_d_monotone ? "true" : "false") << ",\n";
    out << "  \"h1_ratio\": " << fmt(h1_ratio) << ",\n";
    out << "  \"h1_ratio_bounded\": " << (h1_ratio_bounded ? "true" : "false") << ",\n";
    out << "  \"est_uni_fit\": " << fmt(est_uni_fit) << "\n";
    out << "}\n";
    return out.str();
}

double flow_rule_residual(const std::vector<Snapshot>& trajectory, const YieldSurface& surface,
                          int node_lo, int node_hi) {
    double worst = 0;
    for (size_t k = 1; k < trajectory.size(); ++k) {
        const State1D& prev = trajectory[k - 1].state;
        const State1D& cur = trajectory[k].state;
        for (int i = node_lo; i <= node_hi; ++i) {
            const double dp = cur.p[static_cast<size_t>(i)] - prev.p[static_cast<size_t>(i)];
            if (std::abs(dp) <= 1e-14) continue;
            const double sg = cur.sigma[static_cast<size_t>(i)];
            worst = std::max(worst, (sg * dp - surface.support(dp)) / std::abs(dp));
        }
    }
    return worst;
}

double boundary_layer_width(const State1D& state, const Grid1D& grid,
                            const EvolutionaryExact& exact) {
    const int nx = grid.nx;
    std::vector<double> err(static_cast<size_t>(nx));
    for (int i = 0; i < nx; ++i)
        err[static_cast<size_t>(i)] = std::abs(state.u[static_cast<size_t>(i)] -
                                               exact.eval(state.t, grid.x(i)).u);
    // Median interior error over the central 60% of the domain.
    std::vector<double> interior;
    for (int i = static_cast<int>(0.2 * nx); i <= static_cast<int>(0.8 * nx); ++i)
        interior.push_back(err[static_cast<size_t>(i)]);
    std::nth_element(interior.begin(), interior.begin() + static_cast<std::ptrdiff_t>(interior.size() / 2),
                     interior.end());
    const double med = interior[interior.size() / 2];
    const double threshold = 5.0 * std::max(med, 1e-14);
    for (int i = static_cast<int>(0.8 * nx); i < nx; ++i) {
        if (err[static_cast<size_t>(i)] > threshold) return grid.length - grid.x(i);
    }
    return 0.0;
}

}  // namespace plastiflow
