#pragma once

#include <vector>

#include "magline/classify.hpp"
#include "magline/elliptic.hpp"
#include "magline/fields.hpp"
#include "magline/integrate.hpp"
#include "magline/vec3.hpp"

namespace magline {

struct CylindricalState {
    double rho = 0.0;
    double phi = 0.0;
    double z = 0.0;
};

Vec3 to_vec3(const CylindricalState& c);
CylindricalState to_cylindrical(const Vec3& p);

/// Everything a case evaluator needs beyond the tag: phase shift t0 seeded
/// from the initial radius, argument scale r, evaluation modulus k, turning
/// roots C <= 0 <= A <= B of the radial cubic, branch/orientation sign and
/// the translation strength.
struct SolutionParams {
    CaseTag tag;
    double t0 = 0.0;
    Modulus k{0.0}; // evaluation modulus, always inside [0, 1)
    double r = 1.0; // time scale of the elliptic argument r*t + t0
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double eps = 1.0; // sign of f'(0) branch, or helix orientation
    double s = 0.0;   // translation strength
};

/// Seed the phase shift and moduli for a solvable tag from the initial
/// state, given in the canonical frame of the field. The branch sign is
/// chosen to match sign(f'(0)) = sign(2(x0 u0 + y0 v0)).
/// Throws InconsistentIcError when the initial radius lies outside the
/// admissible band of the case, ContractViolation for non-solvable tags.
SolutionParams solve_params(const CaseTag& tag, const InitialInvariants& inv,
                            const State6& ic);

/// Planar disc curve at q0 = 0, modulus 1/sqrt(2). The radial coordinate is
/// carried with its sign through axis crossings so the curve continues
/// smoothly to the mirror half-plane; rho = |sigma| <= sqrt(2).
Vec3 eval_planar_q0_zero(const SolutionParams& p, double t);

/// Planar curve at q0 = 1: rho = 2 sech(t - t0), explicit z. Defined on all
/// of the real line.
Vec3 eval_planar_q0_one(const SolutionParams& p, double t);

/// Planar family: -1 < q0 < 1 (disc through the axis, signed radial
/// coordinate) and q0 > 1 (annulus, rho^2 between 2(q0 -+ 1)); z by
/// quadrature of z' = q0 - rho^2/2.
Vec3 eval_planar_general(const SolutionParams& p, double t);

/// Non-planar bounded case: rho^2 = (A k^2 - C sn^2)/(k^2 - sn^2) with
/// argument r t + t0 and evaluation modulus 1/k; phi and z by quadrature.
Vec3 eval_general_elliptic(const SolutionParams& p, double t);

/// Circular helix on the cylinder rho = rho0 (velocity satisfies the
/// circular-motion relations; w0 < 0 necessarily).
Vec3 eval_helix_case_ii(const SolutionParams& p, const State6& ic, double t);

/// Helix family of the translation field with strength s != 0.
Vec3 eval_classical_helix(double s, const State6& ic, double t);

struct CurvatureTorsion {
    double kappa = 0.0;
    double tau = 0.0;
};

/// kappa = |s| sqrt(1 - w0^2), tau = s w0 for the classical helix; constant
/// along the curve. Requires |w0| <= 1.
CurvatureTorsion classical_curvature_torsion(double s, double w0);

/// A classified, seeded closed-form trajectory bound to one field and one
/// initial state. Position needs the accumulated integrals of J = rho^2
/// (and 1/J for the general elliptic case); they are cached once on a
/// uniform grid over [-margin, t_end + margin] with per-cell adaptive
/// quadrature and quintic Hermite dense output (the integrand and its
/// analytic slope pin both cell ends), immutable afterwards. Velocity and
/// acceleration are pointwise analytic (no quadrature and no differencing),
/// so they are exact up to rounding.
class ClosedFormTrajectory {
  public:
    /// Classifies and seeds; throws ContractViolation for tags without a
    /// closed form (AxisDegenerate, NonExistent) and InconsistentIcError
    /// when the seeding rejects the initial state.
    ClosedFormTrajectory(const KillingField& field, const State6& ic, double t_end = 10.0);

    Vec3 position(double t) const;
    State6 state(double t) const;
    Vec3 acceleration(double t) const;

    /// Uniform sampling with the drift columns of integrate_trajectory;
    /// invariant drifts are measured in the canonical frame for rotational
    /// fields and zero-filled for translations.
    Trajectory sample(double t_end, double dt) const;

    const CaseTag& tag() const { return params_.tag; }
    const SolutionParams& params() const { return params_; }

    /// Set when the phi quadrature had to clamp J = rho^2 below 1e-10 near
    /// an axis approach; phi values may lose accuracy there.
    bool precision_flag() const { return precision_flag_; }

  private:
    void kinematics(double t, Vec3* pos, Vec3* vel, Vec3* acc) const;
    double integral_J(double t) const;
    double integral_inv_J(double t) const;
    double lookup(const std::vector<double>& cum, const std::vector<double>& node,
                  const std::vector<double>& der, double t) const;

    KillingField field_;
    State6 ic_; // canonical frame
    SolutionParams params_;

    bool use_grid_ = false;
    bool need_inv_ = false;
    double grid_t0_ = 0.0;
    double grid_h_ = 0.0;
    std::vector<double> cum_j_, node_j_, der_j_;       // cumulative, J, J'
    std::vector<double> cum_inv_, node_inv_, der_inv_; // same for 1/J
    double cum_j_zero_ = 0.0;                // cumulative values at t = 0
    double cum_inv_zero_ = 0.0;
    bool precision_flag_ = false;
};

} // namespace magline
