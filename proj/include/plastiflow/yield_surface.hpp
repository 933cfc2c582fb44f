#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plastiflow/sym_matrix.hpp"

namespace plastiflow {

struct ScalarProjection {
    double point = 0;
    double distance = 0;
    bool inside = false;
};

struct MatrixProjection {
    SymMatrix point;
    double distance = 0;
    bool inside = false;
};

// Compact convex admissible set for the deviatoric stress. Matrix kinds act on
// the deviatoric part only; the full symmetric space sees the cylindrical
// extension K + R*Id (the hydrostatic direction is free). Interval surfaces
// act directly on scalars. Instances are immutable values; every operation is
// a pure function and safe to call concurrently.
class YieldSurface {
  public:
    enum class Kind { Interval, VonMisesBall, HillEllipsoid, Hosford };

    static YieldSurface interval(double lo, double hi);
    static YieldSurface vonmises(int n, double radius);
    // b: row-major m x m SPD matrix on orthonormal deviatoric coordinates,
    // m = n(n+1)/2 - 1.
    static YieldSurface hill(int n, std::vector<double> b);
    static YieldSurface hosford(int n, double p, double scale = 1.0);

    Kind kind() const { return kind_; }
    std::string kind_name() const;
    int dim() const { return n_; }
    double inner_radius() const { return r_k_; }
    double outer_radius() const { return r_big_k_; }

    // Curvature lower bound C_K; empty until estimated.
    std::optional<double> curvature_bound() const { return c_k_; }
    YieldSurface with_curvature(double c_k) const;

    // --- scalar interface (Interval kind) ---
    ScalarProjection project(double x) const;
    double distance(double x) const;
    double support(double q) const;
    double projection_differential(double x, double v) const;

    // --- matrix interface (cylindrical for the full symmetric space) ---
    MatrixProjection project(const SymMatrix& x) const;
    double distance(const SymMatrix& x) const;
    // Projection of a trace-free point within deviatoric space.
    MatrixProjection project_deviatoric(const SymMatrix& q) const;
    // Support function of K; q must be trace-free.
    double support(const SymMatrix& q) const;
    // Quadratic form D Pi_K(x) v . v by central differences of the projection.
    double projection_differential(const SymMatrix& x, const SymMatrix& v) const;

    // Minimum over sampled boundary points / tangent directions of the second
    // fundamental form quotient D^2F(y) v.v / |DF(y)|. Empty for intervals
    // (flat 1D boundary, not applicable).
    std::optional<double> estimate_curvature(int samples, std::uint64_t seed) const;

    // Value and gradient of the defining function F (matrix kinds only);
    // exposed for curvature and convexity diagnostics.
    double defining_value(const SymMatrix& dev) const;
    SymMatrix defining_gradient(const SymMatrix& dev) const;
    // Boundary radius along a unit deviatoric direction.
    double boundary_radius(const SymMatrix& unit_dev) const;

    // Interval bounds (valid for Interval kind).
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double hosford_exponent() const { return p_; }
    double hosford_scale() const { return scale_; }
    const std::vector<double>& hill_matrix() const { return b_; }

  private:
    YieldSurface() = default;

    std::vector<double> hill_apply(const std::vector<double>& c) const;
    // Projection of an eigenvalue vector onto {f <= scale^p} for Hosford.
    std::vector<double> hosford_project_eigs(const std::vector<double>& lam) const;
    double hosford_support_eigs(const std::vector<double>& lam) const;

    Kind kind_ = Kind::Interval;
    int n_ = 1;
    double lo_ = -1, hi_ = 1;
    double radius_ = 1;
    std::vector<double> b_;           // Hill m x m row-major
    std::vector<double> b_values_;    // Hill eigenvalues
    std::vector<double> b_vectors_;   // Hill eigenvectors (row-major, columns)
    double p_ = 2, scale_ = 1;
    double r_k_ = 1, r_big_k_ = 1;
    std::optional<double> c_k_;
};

// Uniformly random unit trace-free matrix (used by sampling diagnostics).
SymMatrix random_unit_deviatoric(int n, std::uint64_t seed);

}  // namespace plastiflow
