#include "plastiflow/csv.hpp"

#include <cstdio>

#include "plastiflow/errors.hpp"

namespace plastiflow {

CsvWriter::CsvWriter(const std::string& path, bool with_boundary_gap)
    : with_gap_(with_boundary_gap) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw ValidationError("cannot open output file: " + path);
    file_ = f;
    if (with_gap_)
        std::fputs("t,x,sigma,v,u,p,d_sigma,energy_residual,boundary_gap\n", f);
    else
        std::fputs("t,x,sigma,v,u,p,d_sigma,energy_residual\n", f);
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(static_cast<std::FILE*>(file_));
}

void CsvWriter::row(double t, double x, double sigma, double v, double u, double p, double d_sigma,
                    double energy_residual) {
    std::fprintf(static_cast<std::FILE*>(file_),
                 "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, x, sigma, v, u, p, d_sigma,
                 energy_residual);
}

void CsvWriter::row_with_gap(double t, double x, double sigma, double v, double u, double p,
                             double d_sigma, double energy_residual, double boundary_gap) {
    std::fprintf(static_cast<std::FILE*>(file_),
                 "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, x, sigma, v, u, p,
                 d_sigma, energy_residual, boundary_gap);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const Scenario& scenario) {
    CsvWriter csv(path);
    for (const auto& ps : traj.probes) {
        for (size_t k = 0; k < ps.t.size(); ++k) {
            // Energy residual series is recorded per step starting after step 1.
            double res = 0;
            if (!traj.ledger_t.empty() && k > 0 && k - 1 < traj.ledger_residual.size())
                res = traj.ledger_residual[std::min(k - 1, traj.ledger_residual.size() - 1)];
            csv.row(ps.t[k], ps.x, ps.sigma[k], ps.v[k], ps.u[k], ps.p[k],
                    scenario.surface.distance(ps.sigma[k]), res);
        }
    }
}

void write_snapshot_csv(const std::string& path, const Trajectory& traj,
                        const Scenario& scenario) {
    CsvWriter csv(path);
    for (const auto& snap : traj.snapshots) {
        for (int i = 0; i < scenario.grid.nx; ++i) {
            const double sg = snap.state.sigma[static_cast<size_t>(i)];
            csv.row(snap.t, scenario.grid.x(i), sg, snap.state.v[static_cast<size_t>(i)],
                    snap.state.u[static_cast<size_t>(i)], snap.state.p[static_cast<size_t>(i)],
                    scenario.surface.distance(sg), snap.energy_residual);
        }
    }
}

void write_exact_csv(const std::string& path, const EvolutionaryExact& exact, const Grid1D& grid,
                     const std::vector<double>& times) {
    CsvWriter csv(path);
    for (double t : times) {
        for (int i = 0; i < grid.nx; ++i) {
            const auto v = exact.eval(t, grid.x(i));
            csv.row(t, grid.x(i), v.sigma, v.udot, v.u, v.p, std::max(0.0, std::abs(v.sigma) - 1.0),
                    0.0);
        }
    }
}

void write_exact_csv(const std::string& path, const StationaryExact& exact, const Grid1D& grid) {
    CsvWriter csv(path, true);
    for (int i = 0; i < grid.nx; ++i) {
        const auto v = exact.eval(grid.x(i));
        const double gap = grid.x(i) == grid.length ? -v.p_atom_at_right : 0.0;
        csv.row_with_gap(0.0, grid.x(i), v.sigma, 0.0, v.u, 0.0,
                         std::max(0.0, std::abs(v.sigma) - 1.0), 0.0, gap);
    }
}

}  // namespace plastiflow
