#include "plastiflow/potential.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include "plastiflow/errors.hpp"

namespace plastiflow {

namespace {

constexpr double kLogCap = 700.0;  // exp(700) is the structured overflow line

double checked_exp(double logv) {
    if (logv > kLogCap) throw Overflow("regularized potential exceeded exp(700)");
    return std::exp(logv);
}

}  // namespace

double RadialProfile::g(double r) const {
    const double r2 = std::min(r * r, lambda * lambda);
    const double e = 1.0 / (2.0 * alpha) - 0.5;
    return checked_exp(e * std::log1p(r2));
}

double RadialProfile::dg(double r) const {
    if (r >= lambda) return 0.0;
    const double r2 = r * r;
    const double e = 1.0 / (2.0 * alpha) - 0.5;
    // d/dr (1+r^2)^e = 2 e r (1+r^2)^(e-1)
    return 2.0 * e * r * checked_exp((e - 1.0) * std::log1p(r2));
}

double RadialProfile::phi(double r) const {
    const double r2 = r * r;
    const double l2 = lambda * lambda;
    const double head =
        alpha / (alpha + 1.0) * checked_exp((alpha + 1.0) / (2.0 * alpha) * std::log1p(std::min(r2, l2)));
    if (r2 <= l2) return head;
    return head + 0.5 * checked_exp((1.0 / (2.0 * alpha) - 0.5) * std::log1p(l2)) * (r2 - l2);
}

double RadialProfile::dphi(double r) const { return g(r) * r; }

double RadialProfile::ray_conjugate(double s) const {
    assert(s >= 0);
    if (s == 0.0) return -phi(0.0);
    // Bracket the monotone root phi'(r) = s by geometric growth, then close in
    // with Newton kept inside the bisection bracket (phi'' is available).
    double hi = 1.0;
    int grow = 0;
    while (dphi(hi) < s) {
        hi *= 2.0;
        if (++grow > 60) throw BracketFailure("conjugate bracket exceeded 2^60");
    }
    double lo = hi > 1.0 ? 0.5 * hi : 0.0;
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = dphi(r) - s;
        if (f > 0) hi = r; else lo = r;
        if (std::abs(f) <= 1e-12 * (1.0 + s) && hi - lo <= 1e-12 * (1.0 + hi)) break;
        const double slope = g(r) + r * dg(r);
        double next = r - f / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        r = next;
    }
    return r * s - phi(r);
}

double RadialProfile::relax_distance(double capital_d, double tau) const {
    if (capital_d <= 0.0) return 0.0;
    // psi(d) = d (1 + tau g(d)) is strictly increasing on [0, D].
    auto psi = [&](double d) { return d * (1.0 + tau * g(d)); };
    double lo = 0.0, hi = capital_d;
    double d = capital_d / (1.0 + tau * g(capital_d));  // first Newton-ish guess
    for (int it = 0; it < 200; ++it) {
        const double f = psi(d) - capital_d;
        if (std::abs(f) < 1e-12 * (1.0 + capital_d)) return d;
        if (f > 0) hi = d; else lo = d;
        const double slope = 1.0 + tau * (g(d) + d * dg(d));
        double next = d - f / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        d = next;
    }
    if (std::abs(psi(d) - capital_d) > 1e-9 * (1.0 + capital_d))
        throw RootFindFailure("implicit relaxation root-find failed");
    return d;
}

Potential::Potential(YieldSurface surface, double alpha, double lambda)
    : surface_(std::move(surface)), profile_{alpha, lambda} {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("potential needs alpha in (0, 1]");
    if (!(lambda > 0.0)) throw ValidationError("potential needs lambda > 0");
}

double Potential::value_at_zero() const { return profile_.alpha / (profile_.alpha + 1.0); }

double Potential::value(double xi) const { return profile_.phi(surface_.distance(xi)); }

double Potential::gradient(double xi) const {
    const ScalarProjection pr = surface_.project(xi);
    if (pr.inside) return 0.0;
    return profile_.g(pr.distance) * (xi - pr.point);
}

double Potential::conjugate(double eta) const {
    return surface_.support(eta) + profile_.ray_conjugate(std::abs(eta));
}

double Potential::relax(double sigma_star, double tau) const {
    const ScalarProjection pr = surface_.project(sigma_star);
    if (pr.inside) return sigma_star;
    const double d = profile_.relax_distance(pr.distance, tau);
    return pr.point + (d / pr.distance) * (sigma_star - pr.point);
}

double Potential::value(const SymMatrix& xi) const { return profile_.phi(surface_.distance(xi)); }

SymMatrix Potential::gradient(const SymMatrix& xi) const {
    const MatrixProjection pr = surface_.project(xi);
    if (pr.inside) return SymMatrix::zero(xi.dim());
    return profile_.g(pr.distance) * (xi - pr.point);
}

double Potential::conjugate(const SymMatrix& eta) const {
    return surface_.support(eta) + profile_.ray_conjugate(eta.norm());
}

SymMatrix Potential::relax(const SymMatrix& sigma_star, double tau) const {
    const MatrixProjection pr = surface_.project(sigma_star);
    if (pr.inside) return sigma_star;
    const double d = profile_.relax_distance(pr.distance, tau);
    return pr.point + (d / pr.distance) * (sigma_star - pr.point);
}

GradientInequalityReport Potential::verify_gradient_inequalities(int samples, std::uint64_t seed) const {
    GradientInequalityReport rep;
    rep.samples = samples;
    rep.min_slack_d2 = rep.min_slack_support = std::numeric_limits<double>::max();
    const double r_k = surface_.inner_radius();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radial(0.0, 3.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    for (int s = 0; s < samples; ++s) {
        double dg_dot_xi, d;
        if (surface_.kind() == YieldSurface::Kind::Interval) {
            const double span = surface_.hi() - surface_.lo();
            const double xi = surface_.lo() - span + (3.0 * span) * std::generate_canonical<double, 53>(rng);
            const ScalarProjection pr = surface_.project(xi);
            d = pr.distance;
            dg_dot_xi = gradient(xi) * xi;
        } else {
            const SymMatrix dir = random_unit_deviatoric(surface_.dim(), rng());
            SymMatrix xi = dir * (radial(rng) * surface_.outer_radius());
            // Random hydrostatic part exercises the cylinder.
            const SymMatrix id = SymMatrix::identity(surface_.dim());
            xi += normal(rng) * id;
            const MatrixProjection pr = surface_.project(xi);
            d = pr.distance;
            dg_dot_xi = dot(gradient(xi), xi);
        }
        const double gd = d > 0 ? profile_.g(d) : profile_.g(0.0);
        rep.min_slack_d2 = std::min(rep.min_slack_d2, dg_dot_xi - gd * d * d);
        rep.min_slack_support = std::min(rep.min_slack_support, dg_dot_xi - r_k * gd * d);
    }
    return rep;
}

ChainRuleReport Potential::chain_rule_check(const std::vector<SymMatrix>& field, double dx, double c_k) const {
    ChainRuleReport rep;
    rep.deviatoric_form = true;
    rep.min_slack = std::numeric_limits<double>::max();
    const size_t n = field.size();
    if (n < 3) throw WindowTooSmall("chain-rule check needs at least 3 nodes");
    for (size_t k = 1; k + 1 < n; ++k) {
        const SymMatrix dsig = (field[k + 1] - field[k - 1]) * (1.0 / (2.0 * dx));
        const SymMatrix dgrad = (gradient(field[k + 1]) - gradient(field[k - 1])) * (1.0 / (2.0 * dx));
        const double lhs = dot(dgrad, dsig);
        const double d = surface_.distance(field[k]);
        const SymMatrix dsig_dev = dsig.deviatoric();
        const double rhs = d > 0
                               ? profile_.g(d) * (c_k * d / (1.0 + c_k * d)) * dot(dsig_dev, dsig_dev)
                               : 0.0;
        rep.min_slack = std::min(rep.min_slack, lhs - rhs);
        ++rep.nodes;
    }
    if (rep.nodes == 0) rep.min_slack = 0;
    return rep;
}

ChainRuleReport Potential::chain_rule_check(const std::vector<double>& field, double dx) const {
    // Scalar analogue with the full derivative; a flat interval boundary has
    // no curvature term, the check reduces to monotonicity of the gradient.
    ChainRuleReport rep;
    rep.deviatoric_form = false;
    rep.min_slack = std::numeric_limits<double>::max();
    const size_t n = field.size();
    if (n < 3) throw WindowTooSmall("chain-rule check needs at least 3 nodes");
    for (size_t k = 1; k + 1 < n; ++k) {
        const double dsig = (field[k + 1] - field[k - 1]) / (2.0 * dx);
        const double dgrad = (gradient(field[k + 1]) - gradient(field[k - 1])) / (2.0 * dx);
        rep.min_slack = std::min(rep.min_slack, dgrad * dsig);
        ++rep.nodes;
    }
    if (rep.nodes == 0) rep.min_slack = 0;
    return rep;
}

}  // namespace plastiflow
