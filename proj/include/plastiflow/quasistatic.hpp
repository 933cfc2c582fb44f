#pragma once

#include <vector>

#include "plastiflow/potential.hpp"
#include "plastiflow/scenario.hpp"

namespace plastiflow {

// Quasi-static evolution on (0, L) with both ends Dirichlet, f = 0, rho = 0 and
// spatially constant initial stress. The divergence-free stress space is then
// one-dimensional (constants), and the evolution reduces to the scalar ODE
//   a theta' = m(t) - Dgamma(theta),   m(t) = (wdot(t,L) - wdot(t,0)) / L,
// integrated with the classic fourth-order one-step scheme. The energy ledger
// integrals ride along as extra ODE components, so they share the dt^4 accuracy.
struct QsResult {
    std::vector<double> t;
    std::vector<double> theta;   // sigma(t, x) = theta(t)
    std::vector<double> p;       // plastic strain density (constant in x)
    std::vector<double> ledger_residual;
    double final_theta = 0;
    double final_p = 0;
};

QsResult qs_evolve(const Scenario& scenario, const Potential& potential, double dt, double t_end);

// Velocity reconstruction at time t: the lift of the boundary rates plus the
// corrector z with z_x = a theta' + Dgamma(theta) - wdot_x and z(0) = 0.
// With a linear lift and constant theta the corrector vanishes identically;
// it is still integrated numerically so the consistency z(L) = 0 can be checked.
std::vector<double> qs_velocity(const Scenario& scenario, const Potential& potential, double t,
                                double theta);

// Stationary two-point problem  sigma'' = a sigma + Dgamma(sigma)  with
// sigma'(0) = u(0), sigma'(L) = u(L)  (the displacement equals sigma' here).
// Damped Newton on central differences; the Jacobian is tridiagonal with the
// Dgamma' term on the diagonal obtained by forward differences. For small
// alpha the solve path-follows alpha down from 1 (plain Newton overshoots
// because Dgamma' blows up like d^(1/alpha - 1)).
struct StationaryResult {
    std::vector<double> sigma;
    std::vector<double> u;        // = sigma' by central differences
    std::vector<double> p;        // plastic strain density Dgamma(sigma)
    double residual_inf = 0;
    int newton_iterations = 0;
    double boundary_gap = 0;      // u(L) - prescribed u(L); discretization error only
};

StationaryResult solve_stationary(const Scenario& scenario, const Potential& potential);

}  // namespace plastiflow
