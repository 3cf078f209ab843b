#include "magline/fields.hpp"

#include <cmath>

namespace magline {

Vec3 eval_field(const KillingField& f, const Vec3& p) {
    if (f.kind == KillingField::Kind::Translation) {
        switch (f.axis) {
            case Axis::X: return {f.strength, 0.0, 0.0};
            case Axis::Y: return {0.0, f.strength, 0.0};
            case Axis::Z: return {0.0, 0.0, f.strength};
        }
    }
    switch (f.axis) {
        case Axis::X: return {0.0, -p.z, p.y};
        case Axis::Y: return {p.z, 0.0, -p.x};
        case Axis::Z: return {-p.y, p.x, 0.0};
    }
    return {};
}

Vec3 lorentz_force(const KillingField& f, const Vec3& p, const Vec3& w) {
    return cross(eval_field(f, p), w);
}

State6 magnetic_rhs(const KillingField& f, const State6& s) {
    return {s.vel, lorentz_force(f, s.pos, s.vel)};
}

std::array<double, 9> field_jacobian(const KillingField& f) {
    std::array<double, 9> j{}; // zero for translations
    if (f.kind == KillingField::Kind::Rotation) {
        switch (f.axis) {
            case Axis::X: j[5] = -1.0; j[7] = 1.0; break; // d(-z)/dz, d(y)/dy rows
            case Axis::Y: j[2] = 1.0;  j[6] = -1.0; break;
            case Axis::Z: j[1] = -1.0; j[3] = 1.0;  break;
        }
    }
    return j;
}

double killing_residual(const std::array<double, 9>& j, std::span<const Vec3> vectors) {
    // For a linear field the covariant derivative D_Y V is just J*Y, so the
    // bilinear form is Y^T (J + J^T) Z.
    double worst = 0.0;
    auto apply = [&j](const Vec3& v) -> Vec3 {
        return {j[0] * v.x + j[1] * v.y + j[2] * v.z,
                j[3] * v.x + j[4] * v.y + j[5] * v.z,
                j[6] * v.x + j[7] * v.y + j[8] * v.z};
    };
    for (const Vec3& y : vectors) {
        for (const Vec3& z : vectors) {
            const double b = dot(apply(y), z) + dot(apply(z), y);
            worst = std::max(worst, std::fabs(b));
        }
    }
    return worst;
}

double verify_killing(const KillingField& f, std::span<const Vec3> vectors) {
    return killing_residual(field_jacobian(f), vectors);
}

namespace {

// Cyclic index shifts: axis X maps (x,y,z) -> (y,z,x), axis Y maps
// (x,y,z) -> (z,x,y); both are rotations, so orientation is preserved and
// cross products commute with the relabeling.
Vec3 permute_fwd(Axis a, const Vec3& p) {
    switch (a) {
        case Axis::X: return {p.y, p.z, p.x};
        case Axis::Y: return {p.z, p.x, p.y};
        case Axis::Z: return p;
    }
    return p;
}

Vec3 permute_bwd(Axis a, const Vec3& p) {
    switch (a) {
        case Axis::X: return {p.z, p.x, p.y};
        case Axis::Y: return {p.y, p.z, p.x};
        case Axis::Z: return p;
    }
    return p;
}

} // namespace

Vec3 to_canonical_frame(Axis axis, const Vec3& p) { return permute_fwd(axis, p); }
Vec3 from_canonical_frame(Axis axis, const Vec3& p) { return permute_bwd(axis, p); }

State6 to_canonical_frame(Axis axis, const State6& s) {
    return {permute_fwd(axis, s.pos), permute_fwd(axis, s.vel)};
}

State6 from_canonical_frame(Axis axis, const State6& s) {
    return {permute_bwd(axis, s.pos), permute_bwd(axis, s.vel)};
}

} // namespace magline
