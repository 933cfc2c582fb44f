#include "plastiflow/quasistatic.hpp"

#include <algorithm>
#include <cmath>

#include "plastiflow/errors.hpp"
#include "plastiflow/small_linalg.hpp"

namespace plastiflow {

namespace {

void require_reduction(const Scenario& sc) {
    if (sc.bc_left != BcType::Dirichlet || sc.bc_right != BcType::Dirichlet)
        throw ReductionUnavailable("quasi-static reduction needs Dirichlet data at both ends");
    if (sc.body_force.space.kind != SpaceFn::Kind::Constant || sc.body_force.space.c0 != 0.0)
        throw ReductionUnavailable("quasi-static reduction needs zero body force");
    if (sc.load_potential.space.kind != SpaceFn::Kind::Constant || sc.load_potential.space.c0 != 0.0)
        throw ReductionUnavailable("quasi-static reduction needs zero load potential");
    if (sc.sigma0.kind != SpaceFn::Kind::Constant)
        throw ReductionUnavailable("quasi-static reduction needs spatially constant initial stress");
}

}  // namespace

QsResult qs_evolve(const Scenario& scenario, const Potential& potential, double dt, double t_end) {
    require_reduction(scenario);
    const double a = scenario.compliance;
    const double L = scenario.grid.length;

    auto m = [&](double t) {
        return (scenario.w_right.deriv(t) - scenario.w_left.deriv(t)) / L;
    };
    auto rhs_theta = [&](double t, double theta) {
        return (m(t) - potential.gradient(theta)) / a;
    };

    // Augmented state: theta, p, dissipation integral, work integral.
    struct Aug {
        double theta, p, diss, work;
    };
    auto rhs = [&](double t, const Aug& y) {
        Aug d;
        const double grad = potential.gradient(y.theta);
        d.theta = (m(t) - grad) / a;
        d.p = grad;
        d.diss = grad == 0.0 ? 0.0
                             : L * (potential.value(y.theta) + potential.conjugate(grad));
        d.work = L * m(t) * y.theta;
        return d;
    };

    Aug y{scenario.sigma0.eval(0.0, L), 0.0, 0.0, 0.0};
    const double theta0 = y.theta;

    QsResult out;
    const int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-9)));
    out.t.reserve(static_cast<size_t>(steps) + 1);
    out.theta.reserve(static_cast<size_t>(steps) + 1);
    out.p.reserve(static_cast<size_t>(steps) + 1);

    auto push = [&](double t) {
        out.t.push_back(t);
        out.theta.push_back(y.theta);
        out.p.push_back(y.p);
        const double lhs = 0.5 * a * L * y.theta * y.theta + y.diss;
        const double rhs_bal = 0.5 * a * L * theta0 * theta0 + y.work;
        out.ledger_residual.push_back(lhs - rhs_bal);
    };
    push(0.0);

    double t = 0;
    for (int k = 0; k < steps; ++k) {
        const Aug k1 = rhs(t, y);
        auto advance = [&](const Aug& base, const Aug& slope, double h) {
            return Aug{base.theta + h * slope.theta, base.p + h * slope.p,
                       base.diss + h * slope.diss, base.work + h * slope.work};
        };
        const Aug k2 = rhs(t + 0.5 * dt, advance(y, k1, 0.5 * dt));
        const Aug k3 = rhs(t + 0.5 * dt, advance(y, k2, 0.5 * dt));
        const Aug k4 = rhs(t + dt, advance(y, k3, dt));
        y.theta += dt / 6.0 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta);
        y.p += dt / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
        y.diss += dt / 6.0 * (k1.diss + 2 * k2.diss + 2 * k3.diss + k4.diss);
        y.work += dt / 6.0 * (k1.work + 2 * k2.work + 2 * k3.work + k4.work);
        t += dt;
        push(t);
    }
    (void)rhs_theta;

    out.final_theta = y.theta;
    out.final_p = y.p;
    return out;
}

std::vector<double> qs_velocity(const Scenario& scenario, const Potential& potential, double t,
                                double theta) {
    const double a = scenario.compliance;
    const double L = scenario.grid.length;
    const int nx = scenario.grid.nx;
    const double dx = scenario.grid.dx();
    const double m = (scenario.w_right.deriv(t) - scenario.w_left.deriv(t)) / L;
    const double grad = potential.gradient(theta);
    const double theta_dot = (m - grad) / a;

    std::vector<double> v(static_cast<size_t>(nx));
    double z = 0;  // cumulative corrector; stays ~0 for the 1D reduction
    for (int i = 0; i < nx; ++i) {
        const double x = scenario.grid.x(i);
        v[static_cast<size_t>(i)] = scenario.wdot_lift(t, x) + z;
        const double zx = a * theta_dot + grad - scenario.wdot_lift_x(t);
        z += zx * dx;
    }
    return v;
}

StationaryResult solve_stationary(const Scenario& scenario, const Potential& potential) {
    const Grid1D& grid = scenario.grid;
    const int nx = grid.nx;
    const double dx = grid.dx();
    const double a = scenario.compliance;
    const double du_left = scenario.u_left;
    const double du_right = scenario.u_right;

    // Continuation ladder in alpha: plain Newton overshoots for small alpha.
    std::vector<double> ladder;
    const double target = potential.alpha();
    for (double al : {1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01}) {
        if (al > target * (1.0 + 1e-12)) ladder.push_back(al);
    }
    ladder.push_back(target);

    std::vector<double> sigma(static_cast<size_t>(nx), 0.0);

    StationaryResult out;
    for (double alpha : ladder) {
        const Potential pot(potential.surface(), alpha, potential.lambda());

        // Residual of sigma'' = a sigma + Dgamma(sigma), scaled by dx^2 so the
        // 1e-10 tolerance is meaningful at fine grids. Ghost-node Neumann rows
        // enforce sigma'(0) = u(0), sigma'(L) = u(L) and keep the system
        // strictly tridiagonal.
        const double h2 = dx * dx;
        auto residual = [&](const std::vector<double>& s, std::vector<double>& r) {
            for (int i = 1; i + 1 < nx; ++i) {
                const double lap = s[static_cast<size_t>(i - 1)] - 2.0 * s[static_cast<size_t>(i)] +
                                   s[static_cast<size_t>(i + 1)];
                r[static_cast<size_t>(i)] =
                    lap - h2 * (a * s[static_cast<size_t>(i)] + pot.gradient(s[static_cast<size_t>(i)]));
            }
            r[0] = 2.0 * s[1] - 2.0 * s[0] - 2.0 * dx * du_left - h2 * (a * s[0] + pot.gradient(s[0]));
            const size_t e = static_cast<size_t>(nx - 1);
            r[e] = 2.0 * s[e - 1] - 2.0 * s[e] + 2.0 * dx * du_right - h2 * (a * s[e] + pot.gradient(s[e]));
        };

        const double tol = 1e-10;
        std::vector<double> res(static_cast<size_t>(nx)), lower(static_cast<size_t>(nx)),
            diag(static_cast<size_t>(nx)), upper(static_cast<size_t>(nx));
        residual(sigma, res);
        double rnorm = 0;
        for (double v : res) rnorm = std::max(rnorm, std::abs(v));

        int it = 0;
        for (; it < 100 && rnorm > tol; ++it) {
            for (int i = 0; i < nx; ++i) {
                const double s = sigma[static_cast<size_t>(i)];
                const double fd = 1e-7 * (1.0 + std::abs(s));
                const double dgrad = (pot.gradient(s + fd) - pot.gradient(s)) / fd;
                diag[static_cast<size_t>(i)] = -2.0 - h2 * (a + dgrad);
                lower[static_cast<size_t>(i)] = 1.0;
                upper[static_cast<size_t>(i)] = 1.0;
            }
            upper[0] = 2.0;
            lower[static_cast<size_t>(nx - 1)] = 2.0;

            std::vector<double> step = res;
            solve_tridiagonal(lower, diag, upper, step);

            // Halve the step until the residual norm decreases.
            double scale = 1.0;
            bool accepted = false;
            for (int halves = 0; halves < 50; ++halves) {
                std::vector<double> trial = sigma;
                for (int i = 0; i < nx; ++i) trial[static_cast<size_t>(i)] -= scale * step[static_cast<size_t>(i)];
                std::vector<double> rtrial(static_cast<size_t>(nx));
                residual(trial, rtrial);
                double rt = 0;
                for (double v : rtrial) rt = std::max(rt, std::abs(v));
                if (rt < rnorm) {
                    sigma = std::move(trial);
                    res = std::move(rtrial);
                    rnorm = rt;
                    accepted = true;
                    break;
                }
                scale *= 0.5;
            }
            if (!accepted) break;  // stalled at the attainable floor
        }
        if (rnorm > tol)
            throw NewtonDivergence("stationary Newton failed to reach the 1e-10 residual tolerance");
        out.residual_inf = rnorm;
        out.newton_iterations += it;
    }

    // Discrete maximum principle sanity: a positive right displacement pulls
    // the stress maximum to the boundary.
    if (du_right > 0) {
        double smax = sigma[0];
        int arg = 0;
        for (int i = 1; i < nx; ++i)
            if (sigma[static_cast<size_t>(i)] > smax) {
                smax = sigma[static_cast<size_t>(i)];
                arg = i;
            }
        if (arg != nx - 1)
            throw NewtonDivergence("stationary solve violated the boundary maximum principle");
    }

    out.sigma = sigma;
    out.u.resize(static_cast<size_t>(nx));
    for (int i = 0; i < nx; ++i) {
        if (i == 0)
            out.u[0] = (-3.0 * sigma[0] + 4.0 * sigma[1] - sigma[2]) / (2.0 * dx);
        else if (i == nx - 1)
            out.u[static_cast<size_t>(i)] =
                (3.0 * sigma[static_cast<size_t>(nx - 1)] - 4.0 * sigma[static_cast<size_t>(nx - 2)] +
                 sigma[static_cast<size_t>(nx - 3)]) /
                (2.0 * dx);
        else
            out.u[static_cast<size_t>(i)] =
                (sigma[static_cast<size_t>(i + 1)] - sigma[static_cast<size_t>(i - 1)]) / (2.0 * dx);
    }
    out.p.resize(static_cast<size_t>(nx));
    for (int i = 0; i < nx; ++i) out.p[static_cast<size_t>(i)] = potential.gradient(sigma[static_cast<size_t>(i)]);
    out.boundary_gap = out.u[static_cast<size_t>(nx - 1)] - du_right;
    return out;
}

}  // namespace plastiflow
