#pragma once

#include <array>
#include <optional>
#include <string>

#include "magline/fields.hpp"
#include "magline/vec3.hpp"

namespace magline {

/// Conserved quantities of a rotational trajectory, read off the initial
/// state in the canonical Z frame:
///   p0 = x0*v0 - u0*y0   (rho^2 phi' along the motion)
///   q0 = (x0^2 + y0^2)/2 + w0   (z' = q0 - rho^2/2 along the motion)
/// Meaningful under a unit-speed velocity; the formulas are evaluated as-is
/// for any input.
struct InitialInvariants {
    double p0 = 0.0;
    double q0 = 0.0;
    double rho0 = 0.0;
    double phi0 = 0.0;
    double z0 = 0.0;
};

InitialInvariants invariants_from_ic(const State6& ic);

/// The radial cubic P(f) = f^3 - 4 q0 f^2 + 4 (q0^2 - 1) f + 4 p0^2
/// controlling f = rho^2 through f'^2 + P(f) = 0.
struct CubicProfile {
    double b = 0.0; // coefficient of f^2
    double c = 0.0; // coefficient of f
    double d = 0.0; // constant term
    double delta = 0.0;
    int n_real = 0;                // distinct real roots stored (1..3)
    std::array<double, 3> roots{}; // ascending; a double root appears once

    double eval(double f) const { return ((f + b) * f + c) * f + d; }
};

/// Roots by the trigonometric solution of the depressed cubic (the linear
/// coefficient is always negative there), then one Newton polish each, so
/// delta > 0 gives three distinct real roots structurally.
CubicProfile cubic_profile(double p0, double q0);
CubicProfile cubic_profile(const InitialInvariants& inv);

/// Turning interval of f = rho^2: the two positive roots (A, B) when the
/// sign pattern is (-, +, +), the interval (0, f2) for the planar family,
/// nullopt when every root is negative. Requires delta > 0 and throws
/// ContractViolation otherwise.
std::optional<std::array<double, 2>> admissible_interval(const CubicProfile& profile);

enum class CaseKind {
    PlanarBounded,   // p0 = 0, -1 < q0 < 1: disc through the axis
    PlanarSech,      // p0 = 0, q0 = 1: sech profile, rho <= 2
    PlanarAnnulus,   // p0 = 0, q0 > 1: ring bounded away from the axis
    GeneralElliptic, // p0 != 0, two positive turning radii
    HelixCaseII,     // circular helix about the field axis
    ClassicalField,  // translation field: circular helix family
    NonExistent,     // no unit-speed motion with these invariants
    AxisDegenerate,  // initial point on the rotation axis
};

/// Stable string vocabulary used by the CLI.
std::string to_string(CaseKind k);
std::optional<CaseKind> case_kind_from_string(const std::string& name);

struct CaseTag {
    CaseKind kind = CaseKind::NonExistent;
    InitialInvariants inv; // p0/q0 snapped onto taxonomy boundaries
    CubicProfile cubic;
    double orientation = 0.0; // HelixCaseII: the sign in the velocity law
    double strength = 0.0;    // ClassicalField: translation strength
    std::string reason;       // NonExistent: which obstruction fired
};

/// Exact-case snapping width for p0, q0 and the helix relations; axis
/// threshold for rho0. Closed-form branches are measure-zero in ic space,
/// so snapping makes them reachable from floating-point input.
inline constexpr double kEpsClass = 1e-9;
inline constexpr double kEpsAxis = 1e-12;

/// Classify the motion the field generates from the given initial state.
/// Rotational fields are mapped to the canonical Z frame first. Assumes a
/// unit-speed velocity; never throws, every input maps to some tag.
CaseTag classify(const State6& ic, const KillingField& field);

/// Classify an abstract invariant pair under the unit-speed assumption.
/// Circular-helix detection needs a full initial state, so the double-root
/// stratum reports NonExistent here.
CaseTag classify_invariants(double p0, double q0);

/// A concrete unit-speed initial state (canonical frame, phi0 = z0 = 0)
/// realizing a solvable invariant pair: f0 sits mid-band between the
/// turning radii, v0 = p0/rho0 and w0 = q0 - f0/2, u0 from the radial
/// speed. Unit speed then follows identically from the cubic. Throws
/// ContractViolation for tags without an admissible band.
State6 representative_ic(const CaseTag& tag);

} // namespace magline
