#include "plastiflow/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "plastiflow/errors.hpp"

namespace plastiflow {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TimeFn TimeFn::constant(double c) { return {Kind::Constant, c, 0, 0}; }
TimeFn TimeFn::linear(double c0, double c1) { return {Kind::Linear, c0, c1, 0}; }
TimeFn TimeFn::exponential(double c) { return {Kind::Exponential, c, 0, 0}; }
TimeFn TimeFn::sinusoid(double amp, double omega, double phase) {
    return {Kind::Sinusoid, amp, omega, phase};
}

double TimeFn::eval(double t) const {
    switch (kind) {
        case Kind::Constant: return c0;
        case Kind::Linear: return c0 + c1 * t;
        case Kind::Exponential: return c0 * std::exp(t);
        case Kind::Sinusoid: return c0 * std::sin(c1 * t + c2);
    }
    return 0;
}

double TimeFn::deriv(double t) const {
    switch (kind) {
        case Kind::Constant: return 0;
        case Kind::Linear: return c1;
        case Kind::Exponential: return c0 * std::exp(t);
        case Kind::Sinusoid: return c0 * c1 * std::cos(c1 * t + c2);
    }
    return 0;
}

std::string TimeFn::serialize() const {
    switch (kind) {
        case Kind::Constant: return "constant " + fmt(c0);
        case Kind::Linear: return "linear " + fmt(c0) + " " + fmt(c1);
        case Kind::Exponential: return "exponential " + fmt(c0);
        case Kind::Sinusoid: return "sinusoid " + fmt(c0) + " " + fmt(c1) + " " + fmt(c2);
    }
    return "constant 0";
}

TimeFn TimeFn::parse(const std::string& text) {
    std::istringstream in(text);
    std::string name;
    in >> name;
    double a = 0, b = 0, c = 0;
    if (name == "constant") {
        in >> a;
        return constant(a);
    }
    if (name == "linear") {
        in >> a >> b;
        return linear(a, b);
    }
    if (name == "exponential") {
        in >> a;
        return exponential(a);
    }
    if (name == "sinusoid") {
        in >> a >> b >> c;
        return sinusoid(a, b, c);
    }
    throw ValidationError("unknown time built-in: " + name);
}

SpaceFn SpaceFn::constant(double c) { return {Kind::Constant, c, 0}; }
SpaceFn SpaceFn::linear(double c0, double c1) { return {Kind::Linear, c0, c1}; }
SpaceFn SpaceFn::sine(double amp, double mode) { return {Kind::Sine, amp, mode}; }
SpaceFn SpaceFn::elastic_sigma(double amp) { return {Kind::ElasticSigma, amp, 0}; }
SpaceFn SpaceFn::elastic_u(double amp) { return {Kind::ElasticU, amp, 0}; }

double SpaceFn::eval(double x, double length) const {
    switch (kind) {
        case Kind::Constant: return c0;
        case Kind::Linear: return c0 + c1 * x;
        case Kind::Sine: return c0 * std::sin(c1 * std::numbers::pi * x / length);
        case Kind::ElasticSigma: return c0 * std::cosh(x) / std::sinh(length);
        case Kind::ElasticU: return c0 * std::sinh(x) / std::sinh(length);
    }
    return 0;
}

std::string SpaceFn::serialize() const {
    switch (kind) {
        case Kind::Constant: return "constant " + fmt(c0);
        case Kind::Linear: return "linear " + fmt(c0) + " " + fmt(c1);
        case Kind::Sine: return "sine " + fmt(c0) + " " + fmt(c1);
        case Kind::ElasticSigma: return "elastic_sigma " + fmt(c0);
        case Kind::ElasticU: return "elastic_u " + fmt(c0);
    }
    return "constant 0";
}

SpaceFn SpaceFn::parse(const std::string& text) {
    std::istringstream in(text);
    std::string name;
    in >> name;
    double a = 0, b = 0;
    if (name == "constant") {
        in >> a;
        return constant(a);
    }
    if (name == "linear") {
        in >> a >> b;
        return linear(a, b);
    }
    if (name == "sine") {
        in >> a >> b;
        return sine(a, b);
    }
    if (name == "elastic_sigma") {
        in >> a;
        return elastic_sigma(a);
    }
    if (name == "elastic_u") {
        in >> a;
        return elastic_u(a);
    }
    throw ValidationError("unknown space built-in: " + name);
}

double Scenario::w_lift(double t, double x) const {
    const double s = x / grid.length;
    return w_left.eval(t) * (1.0 - s) + w_right.eval(t) * s;
}

double Scenario::wdot_lift(double t, double x) const {
    const double s = x / grid.length;
    return w_left.deriv(t) * (1.0 - s) + w_right.deriv(t) * s;
}

double Scenario::wdot_lift_x(double t) const {
    return (w_right.deriv(t) - w_left.deriv(t)) / grid.length;
}

std::vector<double> Scenario::sample(const SpaceFn& f) const {
    std::vector<double> v(static_cast<size_t>(grid.nx));
    for (int i = 0; i < grid.nx; ++i) v[static_cast<size_t>(i)] = f.eval(grid.x(i), grid.length);
    return v;
}

void Scenario::validate(double t_end) const {
    if (grid.nx < 16) throw ValidationError("grid invariant violated: nx >= 16 required");
    if (!(grid.length > 0)) throw ValidationError("grid invariant violated: L > 0 required");
    if (!(compliance > 0)) throw ValidationError("material invariant violated: compliance a > 0 required");
    if (!(alpha > 0 && alpha <= 1.0)) throw ValidationError("potential invariant violated: alpha in (0,1]");
    if (!(lambda > 0)) throw ValidationError("potential invariant violated: lambda > 0");
    if (surface.kind() != YieldSurface::Kind::Interval)
        throw ValidationError("1D solver scenarios take a scalar stress, so the surface must be an interval");

    const double r_k = surface.inner_radius();

    // Uniform safe load: r_K - max_x |rho(t,x)| >= c > 0, sampled in time.
    double worst_margin = r_k;
    const int nt = 64;
    for (int k = 0; k <= nt; ++k) {
        const double t = t_end * k / nt;
        for (int i = 0; i < grid.nx; ++i) {
            const double rho = load_potential.eval(t, grid.x(i), grid.length);
            worst_margin = std::min(worst_margin, r_k - std::abs(rho));
        }
    }
    if (!(worst_margin > 0))
        throw ValidationError("safe-load invariant violated: r_K - max|rho| must stay positive");

    // Neumann data must stay safely inside the admissible set.
    for (int k = 0; k <= nt; ++k) {
        const double t = t_end * k / nt;
        if (bc_left == BcType::Neumann && surface.distance(g_left.eval(t)) > 0)
            throw ValidationError("boundary invariant violated: Neumann data g(t) must lie in K");
        if (bc_right == BcType::Neumann && surface.distance(g_right.eval(t)) > 0)
            throw ValidationError("boundary invariant violated: Neumann data g(t) must lie in K");
    }

    // Compatibility of the initial velocity with Dirichlet data.
    const double tol_v = 1e-9 * (1.0 + std::abs(w_left.deriv(0)) + std::abs(w_right.deriv(0)));
    if (bc_left == BcType::Dirichlet &&
        std::abs(v0.eval(0.0, grid.length) - w_left.deriv(0)) > tol_v)
        throw ValidationError("compatibility invariant violated: v0(0) must equal dw/dt(0) at the left end");
    if (bc_right == BcType::Dirichlet &&
        std::abs(v0.eval(grid.length, grid.length) - w_right.deriv(0)) > tol_v)
        throw ValidationError("compatibility invariant violated: v0(L) must equal dw/dt(0) at the right end");

    // sigma0 admissible at every node.
    for (int i = 0; i < grid.nx; ++i) {
        if (surface.distance(sigma0.eval(grid.x(i), grid.length)) > 1e-12)
            throw ValidationError("initial-data invariant violated: sigma0(x) must lie in K at every node");
    }

    // Optional equilibrium of the initial stress: -sigma0' = f(0).
    if (check_equilibrium) {
        const double dx = grid.dx();
        const auto s0 = sample(sigma0);
        double worst = 0;
        for (int i = 1; i + 1 < grid.nx; ++i) {
            const double ds = (s0[static_cast<size_t>(i + 1)] - s0[static_cast<size_t>(i - 1)]) / (2 * dx);
            worst = std::max(worst, std::abs(ds + body_force.eval(0.0, grid.x(i), grid.length)));
        }
        if (worst > 10.0 * dx * dx + 1e-10)
            throw ValidationError("equilibrium invariant violated: -sigma0' = f(0) fails at interior nodes");
    }
}

}  // namespace plastiflow
