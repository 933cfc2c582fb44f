#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plastiflow/dynamic_solver.hpp"
#include "plastiflow/exact_solutions.hpp"
#include "plastiflow/scenario.hpp"

namespace plastiflow {

struct SweepCell {
    double alpha = 0.1;
    double lambda = 1e3;
    int nx = 0;           // 0: keep the scenario grid
    double dt_factor = 0.9;
};

enum class SweepMode { Dynamic, Quasistatic };

struct SweepPlan {
    Scenario base;
    SweepMode mode = SweepMode::Dynamic;
    std::vector<SweepCell> cells;   // alpha strictly decreasing, lambda nondecreasing
    double t_end = 1.0;
    std::pair<double, double> interior_window{0.2, 0.8};
    std::vector<double> probes;
    // When set, boundary-layer widths are measured against this closed form.
    std::optional<EvolutionaryExact> reference;

    void validate() const;
};

struct CellReport {
    int id = 0;
    double alpha = 0, lambda = 0;
    bool failed = false;
    std::string error;

    double sup_d_global = 0;
    double sup_d_interior = 0;
    double flow_residual_interior = 0;
    double h1_sigma_interior = 0;
    double h1_v_interior = 0;
    double h1_sigma_boundary = 0;
    double energy_residual_rel = 0;
    double boundary_layer_width = -1;  // -1: no reference available
    double est_uni = 0;                // sup_t of the (1+d^2^l^2)^(1/(2a)+1/2) integral
    double est_uni_scaled = 0;         // same divided by (1 + 1/alpha)
};

struct LimitReport {
    std::vector<CellReport> cells;
    bool sup_d_monotone = true;       // decreasing along the alpha ladder, 10% slack
    bool h1_ratio_bounded = true;     // max/min of interior H1 across cells <= 10
    double h1_ratio = 0;
    double est_uni_fit = 0;           // max over cells of est_uni / (1 + 1/alpha)

    std::string to_json() const;
};

// Runs every cell (cells are independent; they run concurrently, capped by
// PLASTIFLOW_THREADS), then aggregates trend checks. A failing cell is
// recorded and the sweep continues.
LimitReport run_sweep(const SweepPlan& plan);

// Max over consecutive recorded states and interior nodes of
// (sigma . dp - H(dp)) / |dp|, the flow-rule defect per unit plastic
// increment (zero in the perfect-plasticity limit). Increments below 1e-14
// are skipped.
double flow_rule_residual(const std::vector<Snapshot>& trajectory, const YieldSurface& surface,
                          int node_lo, int node_hi);

// Distance from x = L at which |u - u_exact| first exceeds five times the
// median interior error, scanning from the interior toward the boundary.
double boundary_layer_width(const State1D& state, const Grid1D& grid,
                            const EvolutionaryExact& exact);

int sweep_thread_cap();

}  // namespace plastiflow
