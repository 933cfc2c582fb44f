#pragma once

#include <cstdint>
#include <vector>

#include "plastiflow/sym_matrix.hpp"
#include "plastiflow/yield_surface.hpp"

namespace plastiflow {

// Radial profile of the regularized potential:
//   phi(r) = a/(a+1) (1 + r^2 ^ l^2)^((a+1)/(2a)) + 1/2 (1+l^2)^(1/(2a)-1/2) (r^2-l^2)_+
//   g(r)   = (1 + r^2 ^ l^2)^(1/(2a)-1/2),   phi'(r) = g(r) r.
// Powers are evaluated in log space; values past exp(700) raise Overflow.
struct RadialProfile {
    double alpha;
    double lambda;

    double phi(double r) const;
    double dphi(double r) const;   // = g(r) * r, strictly increasing
    double g(double r) const;
    double dg(double r) const;

    // sup_{r >= 0} (r s - phi(r)) for s >= 0, solving phi'(r) = s by bisection
    // with a geometrically grown bracket.
    double ray_conjugate(double s) const;

    // Unique d in [0, capital_d] with d (1 + tau g(d)) = capital_d.
    double relax_distance(double capital_d, double tau) const;
};

struct GradientInequalityReport {
    double min_slack_d2 = 0;     // min of Dgamma(xi).xi - g(d) d^2
    double min_slack_support = 0;  // min of Dgamma(xi).xi - r_K g(d) d
    int samples = 0;
    bool pass(double tol = 1e-10) const {
        return min_slack_d2 >= -tol && min_slack_support >= -tol;
    }
};

struct ChainRuleReport {
    double min_slack = 0;   // min over interior nodes of lhs - rhs
    int nodes = 0;
    bool deviatoric_form = true;  // false for the scalar (interval) analogue
};

// The pair (alpha, lambda) together with its yield surface: gamma(xi) =
// phi(d(xi)), Dgamma(xi) = g(d(xi)) (xi - Pi(xi)), plus the Fenchel
// conjugate gamma*(eta) = H(eta) + sup_r (r|eta| - phi(r)).
// Pure functions over immutable data; concurrency-safe.
class Potential {
  public:
    Potential(YieldSurface surface, double alpha, double lambda);

    const YieldSurface& surface() const { return surface_; }
    const RadialProfile& profile() const { return profile_; }
    double alpha() const { return profile_.alpha; }
    double lambda() const { return profile_.lambda; }
    double value_at_zero() const;  // alpha/(alpha+1)

    // Scalar front-end (interval surfaces).
    double value(double xi) const;
    double gradient(double xi) const;
    double conjugate(double eta) const;
    // Unique root of sigma + tau Dgamma(sigma) = sigma_star.
    double relax(double sigma_star, double tau) const;

    // Matrix front-end (cylindrical surfaces).
    double value(const SymMatrix& xi) const;
    SymMatrix gradient(const SymMatrix& xi) const;
    double conjugate(const SymMatrix& eta) const;
    SymMatrix relax(const SymMatrix& sigma_star, double tau) const;

    // (Dg-1)/(Dg-2) slack over random samples around the surface.
    GradientInequalityReport verify_gradient_inequalities(int samples, std::uint64_t seed) const;

    // Discrete curvature chain-rule check on a 1D field of matrices
    // (deviatoric form, needs a curvature bound) or scalars (interval analogue
    // with the full derivative; curvature term drops since the boundary is flat).
    ChainRuleReport chain_rule_check(const std::vector<SymMatrix>& field, double dx, double c_k) const;
    ChainRuleReport chain_rule_check(const std::vector<double>& field, double dx) const;

  private:
    YieldSurface surface_;
    RadialProfile profile_;
};

}  // namespace plastiflow
