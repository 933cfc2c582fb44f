#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plastiflow/yield_surface.hpp"

namespace plastiflow {

struct Grid1D {
    double length = 1.0;
    int nx = 16;

    double dx() const { return length / (nx - 1); }
    double x(int i) const { return i * dx(); }
};

// Time-dependent boundary/load data: a closed set of named built-ins so runs
// stay reproducible from a config file alone.
struct TimeFn {
    enum class Kind { Constant, Linear, Exponential, Sinusoid };
    Kind kind = Kind::Constant;
    double c0 = 0, c1 = 0, c2 = 0;  // meaning depends on kind

    static TimeFn constant(double c);
    static TimeFn linear(double c0, double c1);      // c0 + c1 t
    static TimeFn exponential(double c);             // c e^t
    static TimeFn sinusoid(double amp, double omega, double phase);

    double eval(double t) const;
    double deriv(double t) const;

    std::string serialize() const;
    static TimeFn parse(const std::string& text);
};

// Spatial profiles on [0, L].
struct SpaceFn {
    enum class Kind { Constant, Linear, Sine, ElasticSigma, ElasticU };
    Kind kind = Kind::Constant;
    double c0 = 0, c1 = 0;

    static SpaceFn constant(double c);
    static SpaceFn linear(double c0, double c1);  // c0 + c1 x
    static SpaceFn sine(double amp, double mode);  // amp sin(mode pi x / L)
    // Stationary elastic fields for end displacement amp on (0, L):
    // sigma = amp cosh(x)/sinh(L), u = amp sinh(x)/sinh(L).
    static SpaceFn elastic_sigma(double amp);
    static SpaceFn elastic_u(double amp);

    double eval(double x, double length) const;

    std::string serialize() const;
    static SpaceFn parse(const std::string& text);
};

// Separable space-time field f(t, x) = time(t) * space(x).
struct SpaceTimeFn {
    TimeFn time = TimeFn::constant(1.0);
    SpaceFn space = SpaceFn::constant(0.0);

    double eval(double t, double x, double length) const {
        return time.eval(t) * space.eval(x, length);
    }
    double deriv_t(double t, double x, double length) const {
        return time.deriv(t) * space.eval(x, length);
    }
};

enum class BcType { Dirichlet, Neumann };

struct Scenario {
    Grid1D grid;
    double compliance = 1.0;  // scalar elastic compliance a: e = a sigma

    YieldSurface surface = YieldSurface::interval(-1.0, 1.0);
    double alpha = 0.1;
    double lambda = 1e3;

    BcType bc_left = BcType::Dirichlet, bc_right = BcType::Dirichlet;
    TimeFn w_left = TimeFn::constant(0.0), w_right = TimeFn::constant(0.0);
    TimeFn g_left = TimeFn::constant(0.0), g_right = TimeFn::constant(0.0);

    SpaceTimeFn body_force;     // f(t, x)
    SpaceTimeFn load_potential; // rho(t, x); defaults to 0
    bool check_equilibrium = false;

    SpaceFn sigma0 = SpaceFn::constant(0.0);
    SpaceFn v0 = SpaceFn::constant(0.0);
    SpaceFn u0 = SpaceFn::constant(0.0);

    // Stationary boundary displacements u(0), u(L).
    double u_left = 0.0, u_right = 0.0;

    std::uint64_t seed = 42;

    // Boundary lift of the Dirichlet data: w(t, x) linear between endpoints.
    double w_lift(double t, double x) const;
    double wdot_lift(double t, double x) const;
    double wdot_lift_x(double t) const;  // spatial slope of the lift rate

    std::vector<double> sample(const SpaceFn& f) const;

    // Throws ValidationError naming the violated invariant.
    void validate(double t_end) const;
};

}  // namespace plastiflow
