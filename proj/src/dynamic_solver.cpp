#include "plastiflow/dynamic_solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "plastiflow/errors.hpp"
#include "plastiflow/kernels.hpp"

namespace plastiflow {

std::vector<double> State1D::elastic_strain(double compliance) const {
    std::vector<double> e(sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i) e[i] = compliance * sigma[i];
    return e;
}

double EnergyLedger::scale() const {
    return std::max({std::abs(kinetic) + std::abs(elastic), std::abs(kinetic0) + std::abs(elastic0),
                     std::abs(work), std::abs(dissipation), 1e-30});
}

double trapezoid(const std::vector<double>& f, double dx) {
    double s = 0;
    for (size_t i = 0; i + 1 < f.size(); ++i) s += 0.5 * (f[i] + f[i + 1]);
    return s * dx;
}

DynamicSolver::DynamicSolver(const Scenario& scenario, const Potential& potential)
    : scenario_(scenario), potential_(potential) {}

State1D DynamicSolver::initial_state() const {
    State1D s;
    s.t = 0;
    s.sigma = scenario_.sample(scenario_.sigma0);
    s.v = scenario_.sample(scenario_.v0);
    s.u = scenario_.sample(scenario_.u0);
    // p0 = u0_x - a sigma0, so the kinematic decomposition starts exact.
    const int nx = scenario_.grid.nx;
    s.p.assign(static_cast<size_t>(nx), 0.0);
    std::vector<double> du(static_cast<size_t>(nx));
    kernels::derivative_serial(s.u, du, scenario_.grid.dx());
    for (int i = 0; i < nx; ++i)
        s.p[static_cast<size_t>(i)] = du[static_cast<size_t>(i)] - scenario_.compliance * s.sigma[static_cast<size_t>(i)];
    return s;
}

double DynamicSolver::max_stable_dt() const {
    return 0.9 * scenario_.grid.dx() * std::sqrt(scenario_.compliance);
}

void DynamicSolver::apply_elastic(State1D& state, double dt, bool parallel,
                                  std::vector<double>& scratch) const {
    const int nx = scenario_.grid.nx;
    const double dx = scenario_.grid.dx();
    const double a = scenario_.compliance;
    const double t_next = state.t + dt;

    auto deriv = parallel ? kernels::derivative_omp : kernels::derivative_serial;
    auto axpy = parallel ? kernels::axpy_scaled_omp : kernels::axpy_scaled_serial;

    // sigma* = sigma + (dt/a) v_x
    deriv(state.v, scratch, dx);
    axpy(state.sigma, scratch, dt / a, state.sigma);
    if (scenario_.bc_left == BcType::Neumann) state.sigma[0] = scenario_.g_left.eval(t_next);
    if (scenario_.bc_right == BcType::Neumann)
        state.sigma[static_cast<size_t>(nx - 1)] = scenario_.g_right.eval(t_next);

    // v+ = v + dt (sigma*_x + f)
    deriv(state.sigma, scratch, dx);
    const double t_mid = state.t + 0.5 * dt;
    for (int i = 0; i < nx; ++i)
        scratch[static_cast<size_t>(i)] += scenario_.body_force.eval(t_mid, scenario_.grid.x(i), scenario_.grid.length);
    axpy(state.v, scratch, dt, state.v);
    if (scenario_.bc_left == BcType::Dirichlet) state.v[0] = scenario_.w_left.deriv(t_next);
    if (scenario_.bc_right == BcType::Dirichlet)
        state.v[static_cast<size_t>(nx - 1)] = scenario_.w_right.deriv(t_next);
}

void DynamicSolver::step(State1D& state, double dt, bool parallel) const {
    if (dt > max_stable_dt() * (1.0 + 1e-12))
        throw CflViolation("dt exceeds 0.9 dx sqrt(a)");
    const int nx = scenario_.grid.nx;
    std::vector<double> scratch(static_cast<size_t>(nx));
    apply_elastic(state, dt, parallel, scratch);

    // Plastic relaxation, nodewise; scratch receives the p increments.
    auto relax = parallel ? kernels::relax_sweep_omp : kernels::relax_sweep_serial;
    relax(state.sigma, scratch, potential_, dt / scenario_.compliance, scenario_.compliance);
    for (int i = 0; i < nx; ++i) state.p[static_cast<size_t>(i)] += scratch[static_cast<size_t>(i)];
    const double t_next = state.t + dt;
    if (scenario_.bc_left == BcType::Neumann) state.sigma[0] = scenario_.g_left.eval(t_next);
    if (scenario_.bc_right == BcType::Neumann)
        state.sigma[static_cast<size_t>(nx - 1)] = scenario_.g_right.eval(t_next);

    for (int i = 0; i < nx; ++i) state.u[static_cast<size_t>(i)] += dt * state.v[static_cast<size_t>(i)];
    state.t = t_next;
}

void DynamicSolver::unstep_elastic(State1D& state, double dt) const {
    const int nx = scenario_.grid.nx;
    const double dx = scenario_.grid.dx();
    const double a = scenario_.compliance;
    std::vector<double> scratch(static_cast<size_t>(nx));

    for (int i = 0; i < nx; ++i) state.u[static_cast<size_t>(i)] -= dt * state.v[static_cast<size_t>(i)];

    kernels::derivative_serial(state.sigma, scratch, dx);
    const double t_mid = state.t - 0.5 * dt;
    for (int i = 0; i < nx; ++i)
        scratch[static_cast<size_t>(i)] += scenario_.body_force.eval(t_mid, scenario_.grid.x(i), scenario_.grid.length);
    for (int i = 0; i < nx; ++i) state.v[static_cast<size_t>(i)] -= dt * scratch[static_cast<size_t>(i)];
    if (scenario_.bc_left == BcType::Dirichlet) state.v[0] = scenario_.w_left.deriv(state.t - dt);
    if (scenario_.bc_right == BcType::Dirichlet)
        state.v[static_cast<size_t>(nx - 1)] = scenario_.w_right.deriv(state.t - dt);

    kernels::derivative_serial(state.v, scratch, dx);
    for (int i = 0; i < nx; ++i)
        state.sigma[static_cast<size_t>(i)] -= (dt / a) * scratch[static_cast<size_t>(i)];
    state.t -= dt;
}

Trajectory DynamicSolver::run(const RunOptions& options) const {
    scenario_.validate(options.t_end);

    const Grid1D& grid = scenario_.grid;
    const int nx = grid.nx;
    const double dx = grid.dx();
    const double a = scenario_.compliance;
    const double dt = options.dt.value_or(options.dt_factor * dx * std::sqrt(a));
    const int steps = std::max(1, static_cast<int>(std::ceil(options.t_end / dt - 1e-9)));

    Trajectory out;
    out.dt = dt;
    out.steps = steps;

    State1D state = initial_state();

    for (double px : options.probes) {
        ProbeSeries ps;
        ps.x = px;
        ps.node = std::clamp(static_cast<int>(std::lround(px / dx)), 0, nx - 1);
        out.probes.push_back(ps);
    }

    const double win_lo = options.interior_window.first * grid.length;
    const double win_hi = options.interior_window.second * grid.length;
    const int iw_lo = std::clamp(static_cast<int>(std::ceil(win_lo / dx - 1e-9)), 0, nx - 1);
    const int iw_hi = std::clamp(static_cast<int>(std::floor(win_hi / dx + 1e-9)), 0, nx - 1);

    const double r_k = scenario_.surface.inner_radius();
    RunDiagnostics& diag = out.diag;
    diag.min_flow_slack = std::numeric_limits<double>::max();

    EnergyLedger ledger;
    std::vector<double> cell(static_cast<size_t>(nx));

    auto spatial_energy = [&](const State1D& s, double& kin, double& el) {
        for (int i = 0; i < nx; ++i) cell[static_cast<size_t>(i)] = s.v[static_cast<size_t>(i)] * s.v[static_cast<size_t>(i)];
        kin = 0.5 * trapezoid(cell, dx);
        for (int i = 0; i < nx; ++i)
            cell[static_cast<size_t>(i)] = a * s.sigma[static_cast<size_t>(i)] * s.sigma[static_cast<size_t>(i)];
        el = 0.5 * trapezoid(cell, dx);
    };
    spatial_energy(state, ledger.kinetic0, ledger.elastic0);
    ledger.kinetic = ledger.kinetic0;
    ledger.elastic = ledger.elastic0;

    // Dissipation integrand at t = 0 for the time trapezoid.
    auto dissipation_integrand = [&](const State1D& s) {
        for (int i = 0; i < nx; ++i) {
            const double sg = s.sigma[static_cast<size_t>(i)];
            const double grad = potential_.gradient(sg);
            if (grad == 0.0) {
                // gamma(sigma) + gamma*(0) = phi(0) - phi(0) inside K
                cell[static_cast<size_t>(i)] = 0.0;
                continue;
            }
            const double rho = scenario_.load_potential.eval(s.t, grid.x(i), grid.length);
            cell[static_cast<size_t>(i)] = potential_.value(sg) + potential_.conjugate(grad) - rho * grad;
        }
        return trapezoid(cell, dx);
    };
    double prev_diss = options.with_ledger ? dissipation_integrand(state) : 0.0;

    std::vector<double> deriv_buf(static_cast<size_t>(nx)), prev_sigma, prev_v;

    auto record_probes = [&](const State1D& s) {
        for (auto& ps : out.probes) {
            ps.t.push_back(s.t);
            ps.sigma.push_back(s.sigma[static_cast<size_t>(ps.node)]);
            ps.v.push_back(s.v[static_cast<size_t>(ps.node)]);
            ps.u.push_back(s.u[static_cast<size_t>(ps.node)]);
            ps.p.push_back(s.p[static_cast<size_t>(ps.node)]);
        }
    };
    record_probes(state);

    auto scan_diagnostics = [&](const State1D& s, const std::vector<double>& dp) {
        double supd_g = 0, supd_i = 0, flow_g = 0, flow_i = 0, sup_abs = 0;
        double est1 = 0, est2 = 0, estu = 0;
        for (int i = 0; i < nx; ++i) {
            const double sg = s.sigma[static_cast<size_t>(i)];
            const double d = scenario_.surface.distance(sg);
            supd_g = std::max(supd_g, d);
            sup_abs = std::max(sup_abs, std::abs(sg));
            if (i >= iw_lo && i <= iw_hi) supd_i = std::max(supd_i, d);
            const double dpi = dp[static_cast<size_t>(i)];
            if (std::abs(dpi) > 1e-14) {
                // Flow-rule defect per unit plastic increment:
                // sigma dp - H(dp) = d |dp| for ray-aligned increments.
                const double defect = (sg * dpi - scenario_.surface.support(dpi)) / std::abs(dpi);
                flow_g = std::max(flow_g, defect);
                if (i >= iw_lo && i <= iw_hi) flow_i = std::max(flow_i, defect);
                diag.min_flow_slack = std::min(diag.min_flow_slack, sg * dpi - r_k * std::abs(dpi));
            }
            const double gd = potential_.profile().g(d);
            est1 += (i == 0 || i == nx - 1 ? 0.5 : 1.0) * gd * d;
            est2 += (i == 0 || i == nx - 1 ? 0.5 : 1.0) * gd * d * d;
            const double r2 = std::min(d * d, potential_.lambda() * potential_.lambda());
            estu += (i == 0 || i == nx - 1 ? 0.5 : 1.0) * gd * (1.0 + r2);
        }
        diag.sup_d_global = std::max(diag.sup_d_global, supd_g);
        diag.sup_d_interior = std::max(diag.sup_d_interior, supd_i);
        diag.flow_residual_global = std::max(diag.flow_residual_global, flow_g);
        diag.flow_residual_interior = std::max(diag.flow_residual_interior, flow_i);
        diag.sup_est_d1 = std::max(diag.sup_est_d1, est1 * dx);
        diag.sup_est_d2 = std::max(diag.sup_est_d2, est2 * dx);
        diag.sup_est_uni = std::max(diag.sup_est_uni, estu * dx);
        if (diag.first_time_near_yield < 0 && sup_abs >= r_k * (1.0 - 1e-2))
            diag.first_time_near_yield = s.t;

        // Kinematic decomposition residual ||u_x - a sigma - p||_inf.
        kernels::derivative_serial(s.u, deriv_buf, dx);
        double kin_res = 0;
        for (int i = 0; i < nx; ++i)
            kin_res = std::max(kin_res, std::abs(deriv_buf[static_cast<size_t>(i)] -
                                                 a * s.sigma[static_cast<size_t>(i)] -
                                                 s.p[static_cast<size_t>(i)]));
        diag.max_kinematic_residual = std::max(diag.max_kinematic_residual, kin_res);

        diag.sup_h1_sigma_interior =
            std::max(diag.sup_h1_sigma_interior, interior_h1_seminorm(s.sigma, grid, win_lo, win_hi));
        diag.sup_h1_v_interior =
            std::max(diag.sup_h1_v_interior, interior_h1_seminorm(s.v, grid, win_lo, win_hi));
        diag.sup_h1_sigma_boundary = std::max(
            diag.sup_h1_sigma_boundary,
            interior_h1_seminorm(s.sigma, grid, options.boundary_window.first * grid.length,
                                 options.boundary_window.second * grid.length));
    };

    std::vector<double> dp_step(static_cast<size_t>(nx), 0.0);
    scan_diagnostics(state, dp_step);

    size_t next_snapshot = 0;
    std::vector<double> snap_times = options.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());

    std::vector<double> scratch(static_cast<size_t>(nx));
    for (int k = 0; k < steps; ++k) {
        prev_sigma = state.sigma;
        prev_v = state.v;
        const double t_before = state.t;

        apply_elastic(state, dt, options.parallel, scratch);
        auto relax = options.parallel ? kernels::relax_sweep_omp : kernels::relax_sweep_serial;
        relax(state.sigma, dp_step, potential_, dt / a, a);
        for (int i = 0; i < nx; ++i) state.p[static_cast<size_t>(i)] += dp_step[static_cast<size_t>(i)];
        if (scenario_.bc_left == BcType::Neumann) state.sigma[0] = scenario_.g_left.eval(t_before + dt);
        if (scenario_.bc_right == BcType::Neumann)
            state.sigma[static_cast<size_t>(nx - 1)] = scenario_.g_right.eval(t_before + dt);
        for (int i = 0; i < nx; ++i) state.u[static_cast<size_t>(i)] += dt * state.v[static_cast<size_t>(i)];
        state.t = t_before + dt;

        if (options.with_ledger) {
            // Work integrand at the midpoint, with discrete time derivatives.
            const double t_mid = t_before + 0.5 * dt;
            for (int i = 0; i < nx; ++i) {
                const double x = grid.x(i);
                const double vdot = (state.v[static_cast<size_t>(i)] - prev_v[static_cast<size_t>(i)]) / dt;
                const double sdot = (state.sigma[static_cast<size_t>(i)] - prev_sigma[static_cast<size_t>(i)]) / dt;
                const double wdot = scenario_.wdot_lift(t_mid, x);
                const double wdot_x = scenario_.wdot_lift_x(t_mid);
                const double rho = scenario_.load_potential.eval(t_mid, x, grid.length);
                const double sig_mid = 0.5 * (state.sigma[static_cast<size_t>(i)] + prev_sigma[static_cast<size_t>(i)]);
                cell[static_cast<size_t>(i)] = vdot * wdot + rho * (a * sdot - wdot_x) + wdot_x * sig_mid;
            }
            ledger.work += dt * trapezoid(cell, dx);
            const double diss = dissipation_integrand(state);
            ledger.dissipation += 0.5 * dt * (prev_diss + diss);
            prev_diss = diss;
            spatial_energy(state, ledger.kinetic, ledger.elastic);
            out.ledger_t.push_back(state.t);
            out.ledger_residual.push_back(ledger.residual());
        }

        scan_diagnostics(state, dp_step);
        if ((k + 1) % options.probe_stride == 0 || k + 1 == steps) record_probes(state);

        while (next_snapshot < snap_times.size() && state.t >= snap_times[next_snapshot] - 0.5 * dt) {
            Snapshot snap;
            snap.t = state.t;
            snap.state = state;
            snap.energy_residual = options.with_ledger ? ledger.residual() : 0.0;
            out.snapshots.push_back(std::move(snap));
            ++next_snapshot;
        }
    }

    if (diag.min_flow_slack == std::numeric_limits<double>::max()) diag.min_flow_slack = 0;
    out.ledger = ledger;
    return out;
}

double interior_h1_seminorm(const std::vector<double>& field, const Grid1D& grid, double x_lo,
                            double x_hi) {
    const int nx = grid.nx;
    const double dx = grid.dx();
    const int i_lo = std::clamp(static_cast<int>(std::ceil(x_lo / dx - 1e-9)), 0, nx - 1);
    const int i_hi = std::clamp(static_cast<int>(std::floor(x_hi / dx + 1e-9)), 0, nx - 1);
    if (i_hi - i_lo + 1 < 4) throw WindowTooSmall("H1 window must contain at least 4 nodes");
    std::vector<double> sq(static_cast<size_t>(i_hi - i_lo + 1));
    for (int i = i_lo; i <= i_hi; ++i) {
        double d;
        if (i == 0)
            d = (-3.0 * field[0] + 4.0 * field[1] - field[2]) / (2.0 * dx);
        else if (i == nx - 1)
            d = (3.0 * field[static_cast<size_t>(nx - 1)] - 4.0 * field[static_cast<size_t>(nx - 2)] +
                 field[static_cast<size_t>(nx - 3)]) /
                (2.0 * dx);
        else
            d = (field[static_cast<size_t>(i + 1)] - field[static_cast<size_t>(i - 1)]) / (2.0 * dx);
        sq[static_cast<size_t>(i - i_lo)] = d * d;
    }
    return std::sqrt(trapezoid(sq, dx));
}

}  // namespace plastiflow
