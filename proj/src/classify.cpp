#include "magline/classify.hpp"

#include <algorithm>
#include <cmath>

#include "magline/errors.hpp"

namespace magline {

InitialInvariants invariants_from_ic(const State6& ic) {
    InitialInvariants inv;
    inv.p0 = ic.pos.x * ic.vel.y - ic.vel.x * ic.pos.y;
    inv.q0 = 0.5 * (ic.pos.x * ic.pos.x + ic.pos.y * ic.pos.y) + ic.vel.z;
    inv.rho0 = std::hypot(ic.pos.x, ic.pos.y);
    inv.phi0 = std::atan2(ic.pos.y, ic.pos.x);
    inv.z0 = ic.pos.z;
    return inv;
}

namespace {

double polish_root(const CubicProfile& pr, double r) {
    for (int i = 0; i < 2; ++i) {
        const double d = (3.0 * r + 2.0 * pr.b) * r + pr.c;
        if (d == 0.0) break;
        r -= pr.eval(r) / d;
    }
    return r;
}

} // namespace

CubicProfile cubic_profile(double p0, double q0) {
    CubicProfile pr;
    pr.b = -4.0 * q0;
    pr.c = 4.0 * (q0 * q0 - 1.0);
    pr.d = 4.0 * p0 * p0;
    const double p2 = p0 * p0;
    const double w = q0 * q0 - 1.0;
    pr.delta = -16.0 * (27.0 * p2 * p2 + 8.0 * p2 * q0 * (q0 * q0 - 9.0) - 16.0 * w * w);

    // Depressed form f = t + 4 q0 / 3: t^3 + pp t + qq with pp < 0 always.
    const double shift = 4.0 * q0 / 3.0;
    const double pp = -4.0 * (q0 * q0 + 3.0) / 3.0;
    const double qq = pr.eval(shift);

    if (pr.delta > 0.0) {
        constexpr double kTwoPiThird = 2.0943951023931954923;
        const double m = 2.0 * std::sqrt(-pp / 3.0);
        const double arg = std::clamp(3.0 * qq / (pp * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            pr.roots[k] = polish_root(pr, m * std::cos(theta - kTwoPiThird * k) + shift);
        }
        pr.n_real = 3;
        std::sort(pr.roots.begin(), pr.roots.end());
    } else if (pr.delta < 0.0) {
        const double disc = std::sqrt(0.25 * qq * qq + pp * pp * pp / 27.0);
        pr.roots[0] = polish_root(pr, std::cbrt(-0.5 * qq + disc) + std::cbrt(-0.5 * qq - disc) + shift);
        pr.n_real = 1;
    } else {
        // Double root plus a simple one; pp < 0 rules out a triple root.
        const double dbl = -1.5 * qq / pp;
        pr.roots[0] = polish_root(pr, dbl + shift);
        pr.roots[1] = 3.0 * qq / pp + shift; // exact at a true double root
        pr.n_real = 2;
        std::sort(pr.roots.begin(), pr.roots.begin() + 2);
    }
    return pr;
}

CubicProfile cubic_profile(const InitialInvariants& inv) {
    return cubic_profile(inv.p0, inv.q0);
}

std::optional<std::array<double, 2>> admissible_interval(const CubicProfile& profile) {
    if (!(profile.delta > 0.0)) {
        throw ContractViolation("admissible_interval requires delta > 0");
    }
    double pos[2];
    int n_pos = 0;
    for (int i = 0; i < profile.n_real; ++i) {
        if (profile.roots[i] > kEpsAxis && n_pos < 2) pos[n_pos++] = profile.roots[i];
    }
    if (n_pos == 2) return std::array<double, 2>{pos[0], pos[1]};
    if (n_pos == 1) return std::array<double, 2>{0.0, pos[0]}; // zero root: planar family
    return std::nullopt;
}

std::string to_string(CaseKind k) {
    switch (k) {
        case CaseKind::PlanarBounded: return "PlanarBounded";
        case CaseKind::PlanarSech: return "PlanarSech";
        case CaseKind::PlanarAnnulus: return "PlanarAnnulus";
        case CaseKind::GeneralElliptic: return "GeneralElliptic";
        case CaseKind::HelixCaseII: return "HelixCaseII";
        case CaseKind::ClassicalField: return "ClassicalField";
        case CaseKind::NonExistent: return "NonExistent";
        case CaseKind::AxisDegenerate: return "AxisDegenerate";
    }
    return "NonExistent";
}

std::optional<CaseKind> case_kind_from_string(const std::string& name) {
    for (CaseKind k : {CaseKind::PlanarBounded, CaseKind::PlanarSech, CaseKind::PlanarAnnulus,
                       CaseKind::GeneralElliptic, CaseKind::HelixCaseII, CaseKind::ClassicalField,
                       CaseKind::NonExistent, CaseKind::AxisDegenerate}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

namespace {

// Shared Case-I logic on an already snapped invariant pair.
void tag_from_pair(CaseTag& tag) {
    const double p0 = tag.inv.p0;
    const double q0 = tag.inv.q0;
    if (p0 == 0.0) {
        if (q0 == 1.0) {
            tag.kind = CaseKind::PlanarSech;
        } else if (q0 > 1.0) {
            tag.kind = CaseKind::PlanarAnnulus;
        } else if (q0 > -1.0) {
            tag.kind = CaseKind::PlanarBounded;
        } else if (q0 == -1.0) {
            tag.kind = CaseKind::AxisDegenerate; // only the axis line itself remains
        } else {
            tag.kind = CaseKind::NonExistent;
            tag.reason = "all-roots-negative";
        }
        return;
    }
    if (tag.cubic.delta > 0.0) {
        if (q0 > -1.0) {
            tag.kind = CaseKind::GeneralElliptic;
        } else {
            tag.kind = CaseKind::NonExistent;
            tag.reason = "all-roots-negative";
        }
        return;
    }
    tag.kind = CaseKind::NonExistent;
    tag.reason = "discriminant-nonpositive";
}

void snap_invariants(InitialInvariants& inv) {
    if (std::fabs(inv.p0) <= kEpsClass) inv.p0 = 0.0;
    if (std::fabs(inv.q0 - 1.0) <= kEpsClass) inv.q0 = 1.0;
    if (std::fabs(inv.q0 + 1.0) <= kEpsClass) inv.q0 = -1.0;
}

} // namespace

CaseTag classify(const State6& ic, const KillingField& field) {
    CaseTag tag;
    if (field.kind == KillingField::Kind::Translation) {
        const State6 c = to_canonical_frame(field.axis, ic);
        tag.kind = CaseKind::ClassicalField;
        tag.strength = field.strength;
        tag.inv.rho0 = std::hypot(c.pos.x, c.pos.y);
        tag.inv.phi0 = std::atan2(c.pos.y, c.pos.x);
        tag.inv.z0 = c.pos.z;
        return tag;
    }

    const State6 c = to_canonical_frame(field.axis, ic);
    tag.inv = invariants_from_ic(c);
    snap_invariants(tag.inv);
    tag.cubic = cubic_profile(tag.inv);

    if (tag.inv.rho0 < kEpsAxis) {
        tag.kind = CaseKind::AxisDegenerate;
        return tag;
    }

    // Circular-helix relations come before the planar/elliptic split: the
    // helix stratum is exactly where the radial cubic has a double root and
    // the elliptic forms degenerate.
    const double rho2 = tag.inv.rho0 * tag.inv.rho0;
    const double w0 = c.vel.z;
    if (std::fabs(w0 + 2.0 / (rho2 + std::sqrt(rho2 * rho2 + 4.0))) <= kEpsClass) {
        const double amp = tag.inv.rho0 * std::sqrt(-w0);
        const double su = amp * std::sin(tag.inv.phi0);
        const double sv = -amp * std::cos(tag.inv.phi0);
        for (const double eps : {1.0, -1.0}) {
            if (std::fabs(c.vel.x - eps * su) <= kEpsClass &&
                std::fabs(c.vel.y - eps * sv) <= kEpsClass) {
                tag.kind = CaseKind::HelixCaseII;
                tag.orientation = eps;
                return tag;
            }
        }
    }

    tag_from_pair(tag);
    return tag;
}

CaseTag classify_invariants(double p0, double q0) {
    CaseTag tag;
    tag.inv.p0 = p0;
    tag.inv.q0 = q0;
    snap_invariants(tag.inv);
    tag.cubic = cubic_profile(tag.inv);
    tag_from_pair(tag);
    return tag;
}

State6 representative_ic(const CaseTag& tag) {
    switch (tag.kind) {
    case CaseKind::PlanarBounded:
    case CaseKind::PlanarSech:
    case CaseKind::PlanarAnnulus:
    case CaseKind::GeneralElliptic:
        break;
    default:
        throw ContractViolation("no representative state for case " +
                                to_string(tag.kind));
    }
    double pos[2] = {0.0, 0.0};
    int np = 0;
    for (int i = 0; i < tag.cubic.n_real; ++i)
        if (tag.cubic.roots[i] > kEpsAxis && np < 2) pos[np++] = tag.cubic.roots[i];
    if (np == 0) throw ContractViolation("no admissible band to place a state in");
    const double lo = (np == 2) ? pos[0] : 0.0;
    const double hi = (np == 2) ? pos[1] : pos[0];
    // mid-band keeps the radial speed bounded away from zero
    const double f0 = 0.5 * (lo + hi);
    const double rho0 = std::sqrt(f0);
    const double v0 = tag.inv.p0 / rho0;
    const double w0 = tag.inv.q0 - 0.5 * f0;
    const double u0 = std::sqrt(std::max(0.0, -tag.cubic.eval(f0))) / (2.0 * rho0);
    return {{rho0, 0.0, 0.0}, {u0, v0, w0}};
}

} // namespace magline
