#pragma once

#include <string>
#include <vector>

#include "plastiflow/dynamic_solver.hpp"
#include "plastiflow/exact_solutions.hpp"

namespace plastiflow {

// Trajectory CSV schema: t,x,sigma,v,u,p,d_sigma,energy_residual. UTF-8, '.'
// decimal separator, header row mandatory, one file per run. Doubles are
// printed with %.17g so identical runs are byte-identical.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path, bool with_boundary_gap = false);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(double t, double x, double sigma, double v, double u, double p, double d_sigma,
             double energy_residual);
    void row_with_gap(double t, double x, double sigma, double v, double u, double p,
                      double d_sigma, double energy_residual, double boundary_gap);

  private:
    void* file_;
    bool with_gap_;
};

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const Scenario& scenario);
void write_snapshot_csv(const std::string& path, const Trajectory& traj, const Scenario& scenario);
void write_exact_csv(const std::string& path, const EvolutionaryExact& exact, const Grid1D& grid,
                     const std::vector<double>& times);
void write_exact_csv(const std::string& path, const StationaryExact& exact, const Grid1D& grid);

}  // namespace plastiflow
