#pragma once

#include <array>
#include <span>

#include "magline/vec3.hpp"

namespace magline {

enum class Axis { X, Y, Z };

/// A Killing vector field of E3 from the rotation/translation basis.
/// Rotations are the unit-strength fields about a coordinate axis; the
/// translation family carries a signed strength s along its axis.
struct KillingField {
    enum class Kind { Rotation, Translation };

    Kind kind = Kind::Rotation;
    Axis axis = Axis::Z;
    double strength = 1.0; // translation magnitude; rotations are unit strength

    static KillingField rotation(Axis a) { return {Kind::Rotation, a, 1.0}; }
    static KillingField translation(Axis a, double s) { return {Kind::Translation, a, s}; }
};

/// Field vector at a point.
/// Rotation(Z) is (-y, x, 0); X and Y follow by the cyclic relabeling
/// x -> y -> z -> x. Translation(axis, s) is the constant vector s*e_axis.
Vec3 eval_field(const KillingField& f, const Vec3& p);

/// Magnetic force on velocity w at point p: V(p) x w.
Vec3 lorentz_force(const KillingField& f, const Vec3& p, const Vec3& w);

/// First order form of the trajectory equation: returns (vel, V(pos) x vel)
/// packed as a State6 derivative.
State6 magnetic_rhs(const KillingField& f, const State6& s);

/// Constant Jacobian matrix of the field, row-major.
std::array<double, 9> field_jacobian(const KillingField& f);

/// Max over points and vector pairs of |g(D_Y V, Z) + g(D_Z V, Y)|, the
/// Killing bilinear form; zero (to rounding) exactly for Killing fields.
/// The generic overload takes an arbitrary constant Jacobian so that
/// deliberately non-Killing fields can be probed.
double killing_residual(const std::array<double, 9>& jacobian,
                        std::span<const Vec3> vectors);
double verify_killing(const KillingField& f, std::span<const Vec3> vectors);

/// Coordinate permutation taking the given axis to the canonical Z frame
/// (cyclic, orientation preserving) and its inverse.
Vec3 to_canonical_frame(Axis axis, const Vec3& p);
Vec3 from_canonical_frame(Axis axis, const Vec3& p);
State6 to_canonical_frame(Axis axis, const State6& s);
State6 from_canonical_frame(Axis axis, const State6& s);

} // namespace magline
