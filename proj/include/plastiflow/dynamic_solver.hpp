#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "plastiflow/potential.hpp"
#include "plastiflow/scenario.hpp"

namespace plastiflow {

struct State1D {
    double t = 0;
    std::vector<double> sigma, v, u, p;  // p = cumulative plastic strain density

    // Elastic strain is derived: e = a sigma.
    std::vector<double> elastic_strain(double compliance) const;
};

// Terms of the dynamic energy balance; all spatial integrals use the trapezoid
// rule on the run grid, time integrals accumulate per step. The residual is
// reported, never dropped.
struct EnergyLedger {
    double kinetic = 0, elastic = 0;
    double kinetic0 = 0, elastic0 = 0;
    double dissipation = 0;  // int (gamma + gamma*(Dgamma) - rho.Dgamma)
    double work = 0;         // int (vdot wdot + rho (a sigmadot - wdot_x) + wdot_x sigma)

    double residual() const { return kinetic + elastic + dissipation - kinetic0 - elastic0 - work; }
    double scale() const;  // magnitude used for relative residuals
};

struct ProbeSeries {
    double x = 0;
    int node = 0;
    std::vector<double> t, sigma, v, u, p;
};

struct Snapshot {
    double t = 0;
    State1D state;
    double energy_residual = 0;
};

// Online diagnostics accumulated during a run.
struct RunDiagnostics {
    double sup_d_global = 0;             // sup_t sup_x d(sigma)
    double sup_d_interior = 0;           // same, restricted to the interior window
    double flow_residual_global = 0;     // max (sigma.dp - H(dp))/|dp| (= d at active nodes)
    double flow_residual_interior = 0;
    double min_flow_slack = 0;           // min (sigma.dp - r_K |dp|), the (Dg-2) shadow
    double max_kinematic_residual = 0;   // max_t ||u_x - a sigma - p||_inf
    double sup_h1_sigma_interior = 0;    // sup_t of the windowed H1 seminorm of sigma
    double sup_h1_v_interior = 0;
    double sup_h1_sigma_boundary = 0;    // same over the boundary window
    double sup_est_d1 = 0;  // sup_t int (1 + d^2 ^ l^2)^(1/(2a)-1/2) d   dx
    double sup_est_d2 = 0;  // sup_t int (1 + d^2 ^ l^2)^(1/(2a)-1/2) d^2 dx
    double sup_est_uni = 0; // sup_t int (1 + d^2 ^ l^2)^(1/(2a)+1/2)     dx
    double first_time_near_yield = -1;   // first t with sup_x |sigma| >= r_K (1 - 1e-2)
};

struct RunOptions {
    double t_end = 1.0;
    std::optional<double> dt;   // explicit step; otherwise dt_factor * dx * sqrt(a)
    double dt_factor = 0.9;
    std::vector<double> probes;          // x locations
    std::vector<double> snapshot_times;
    std::pair<double, double> interior_window{0.2, 0.8};  // fractions of L
    std::pair<double, double> boundary_window{0.9, 1.0};
    bool parallel = true;
    bool with_ledger = true;
    int probe_stride = 1;
};

struct Trajectory {
    std::vector<ProbeSeries> probes;
    std::vector<Snapshot> snapshots;
    std::vector<double> ledger_t, ledger_residual;
    EnergyLedger ledger;
    RunDiagnostics diag;
    double dt = 0;
    int steps = 0;
};

class DynamicSolver {
  public:
    DynamicSolver(const Scenario& scenario, const Potential& potential);

    State1D initial_state() const;

    // One Lie-split step: elastic substep (collocated central update with
    // one-sided boundary stencils), boundary data, nodewise implicit plastic
    // relaxation, then forward accumulation of u. Throws CflViolation when
    // dt > 0.9 dx sqrt(a).
    void step(State1D& state, double dt, bool parallel = true) const;

    // Algebraic inverse of the elastic substep sequence; with the plastic term
    // switched off (surface radius effectively infinite) step followed by
    // unstep_elastic returns the state to roundoff.
    void unstep_elastic(State1D& state, double dt) const;

    Trajectory run(const RunOptions& options) const;

    double max_stable_dt() const;

    const Scenario& scenario() const { return scenario_; }
    const Potential& potential() const { return potential_; }

  private:
    void apply_elastic(State1D& state, double dt, bool parallel, std::vector<double>& dp) const;

    Scenario scenario_;
    Potential potential_;
};

// Trapezoid L2 norm of the central-difference derivative of `field` restricted
// to the window [x_lo, x_hi] (one-sided stencils if the window touches an
// endpoint). Throws WindowTooSmall below 4 nodes.
double interior_h1_seminorm(const std::vector<double>& field, const Grid1D& grid, double x_lo,
                            double x_hi);

double trapezoid(const std::vector<double>& f, double dx);

}  // namespace plastiflow
