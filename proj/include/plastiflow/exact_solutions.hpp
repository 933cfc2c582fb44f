#pragma once

#include <string>
#include <vector>

namespace plastiflow {

// Stationary two-point solution on (0, L) with u(0) = 0, u(L) = a_bc, unit
// admissible interval [-1, 1]. Below |a_bc| <= tanh(L) the solution is purely
// elastic; above it the stress saturates at the boundary and the plastic
// strain concentrates there as a point mass of size a_bc - sign(a_bc) tanh(L).
class StationaryExact {
  public:
    enum class Regime { Elastic, PlasticBoundary };

    StationaryExact(double length, double a_bc);

    Regime regime() const { return regime_; }
    double length() const { return length_; }
    double a_bc() const { return a_bc_; }
    double boundary_atom() const { return atom_; }

    struct Values {
        double u = 0, sigma = 0;
        double p_atom_at_right = 0;
    };
    Values eval(double x) const;

  private:
    double length_, a_bc_, coeff_, atom_;
    Regime regime_;
};

// Evolutionary solution on (0, T] x [0, L] driven by w(t, L) = a e^t with
// 0 < a < tanh(L) < a e^T. Elastic until t0 = ln(tanh(L)/a); afterwards the
// domain splits along the interface x = gamma(t) = arccosh(sinh(L)/(a e^t))
// into an elastic region A (left) and a plastic region B (right) where
// sigma = 1 and the velocity saturates at tanh(x). The boundary displacement
// jump w - u at x = L grows strictly after t0.
class EvolutionaryExact {
  public:
    EvolutionaryExact(double length, double amplitude, double t_end);

    double t0() const { return t0_; }
    double length() const { return length_; }
    double amplitude() const { return amplitude_; }
    // Interface location; valid for t0 < t < ln(sinh(L)/a) (afterwards all of
    // the domain is plastic and the interface has left through x = 0).
    double interface(double t) const;
    double all_plastic_time() const { return t_all_b_; }

    enum class Region { Elastic, A, B };
    struct Values {
        double u = 0, udot = 0, sigma = 0, pdot = 0, p = 0;
        Region region = Region::Elastic;
    };
    Values eval(double t, double x) const;

    // w(t, L) - u(t, L): zero through t0, strictly increasing afterwards.
    double boundary_jump(double t) const;

    static std::string region_name(Region r);

  private:
    double length_, amplitude_, t_end_, t0_, t_all_b_;
};

// Dense-sampling residual audit of a closed form: equation of motion by finite
// differences away from the interface, stress admissibility, the flow rule
// sign identity, continuity across the interface and across t = t0, and the
// boundary optimality condition in the stationary plastic regime.
struct ExactAuditReport {
    double max_motion_residual = 0;   // |u_tt - sigma_x| away from the interface
    double max_constraint_excess = 0; // max(|sigma| - 1)
    double max_flow_rule_defect = 0;  // |sigma pdot - |pdot||
    double max_interface_jump_u = 0;
    double max_interface_jump_udot = 0;
    double max_interface_jump_sigma = 0;
    double min_boundary_optimality = 0;  // sigma(L) (a_bc - u(L)) for the stationary case
    bool pass(double tol) const;
};

ExactAuditReport verify_exact_solution(const StationaryExact& se, double fd_step);
ExactAuditReport verify_exact_solution(const EvolutionaryExact& ee, double fd_step);

}  // namespace plastiflow
