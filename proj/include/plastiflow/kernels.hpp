#pragma once

#include <span>
#include <vector>

#include "plastiflow/potential.hpp"

namespace plastiflow {
namespace kernels {

// Second-order spatial derivative stencil: central in the interior, one-sided
// at the two endpoints. out and in must not alias.
void derivative_serial(std::span<const double> in, std::span<double> out, double dx);
void derivative_omp(std::span<const double> in, std::span<double> out, double dx);

// sigma_star[i] = sigma[i] + (dt/a) dv[i]
void axpy_scaled_serial(std::span<const double> sigma, std::span<const double> dv,
                        double coeff, std::span<double> out);
void axpy_scaled_omp(std::span<const double> sigma, std::span<const double> dv,
                     double coeff, std::span<double> out);

// Nodewise implicit relaxation sigma+ = relax(sigma*, tau); accumulates the
// plastic increment a (sigma* - sigma+) into dp. Nodes are independent, so the
// parallel variant is bitwise identical to the serial one.
void relax_sweep_serial(std::span<double> sigma, std::span<double> dp, const Potential& pot,
                        double tau, double compliance);
void relax_sweep_omp(std::span<double> sigma, std::span<double> dp, const Potential& pot,
                     double tau, double compliance);

}  // namespace kernels
}  // namespace plastiflow
