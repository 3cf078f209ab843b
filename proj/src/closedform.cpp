#include "magline/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "magline/errors.hpp"

namespace magline {

Vec3 to_vec3(const CylindricalState& c) {
    return {c.rho * std::cos(c.phi), c.rho * std::sin(c.phi), c.z};
}

CylindricalState to_cylindrical(const Vec3& p) {
    return {std::hypot(p.x, p.y), std::atan2(p.y, p.x), p.z};
}

namespace {

// f = rho^2 with its first two time derivatives.
struct Radial {
    double f = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
};

// Signed radial coordinate sigma for the disc family (sigma crosses zero
// where the curve passes through the axis; rho = |sigma|).
struct SignedRadial {
    double s = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};

// d^2 sn / du^2 = -sn (1 + k^2 - 2 k^2 sn^2)
double sn_second(double s, double k2) { return -s * (1.0 + k2 - 2.0 * k2 * s * s); }

SignedRadial disc_sigma(const SolutionParams& sp, double t) {
    const double a = sp.tag.inv.q0 + 1.0; // in (0, 2)
    const double k2 = 0.5 * a;
    const EllipticEval e = jacobi_sn_cn_dn(t + sp.t0, sp.k);
    const double s = e.sn;
    const double s1 = e.cn * e.dn;
    const double s2 = sn_second(s, k2);
    const double d = 2.0 - a * s * s; // in [2 - a, 2]
    const double sq = std::sqrt(d);
    const double c = std::sqrt(2.0 * a * (2.0 - a));
    SignedRadial out;
    out.s = c * s / sq;
    out.s1 = 2.0 * c * s1 / (d * sq);
    out.s2 = 2.0 * c * (s2 * d + 3.0 * a * s * s1 * s1) / (d * d * sq);
    return out;
}

SignedRadial sech_sigma(const SolutionParams& sp, double t) {
    const double tau = t - sp.t0;
    const double se = 1.0 / std::cosh(tau);
    const double th = std::tanh(tau);
    return {2.0 * se, -2.0 * se * th, 2.0 * se * (th * th - se * se)};
}

Radial annulus_f(const SolutionParams& sp, double t) {
    const double q0 = sp.tag.inv.q0;
    const double n = q0 * q0 - 1.0;
    const double m2 = 0.5 * (q0 + 1.0); // > 1
    const double r = sp.r;
    const double mu2 = sp.k.value() * sp.k.value();
    const EllipticEval e = jacobi_sn_cn_dn(r * t + sp.t0, sp.k);
    const double s = e.sn;
    const double s1 = e.cn * e.dn;
    const double s2 = sn_second(s, mu2);
    const double g = m2 - s * s; // in [m2 - 1, m2], positive
    Radial out;
    out.f = n / g;
    out.f1 = 2.0 * r * n * s * s1 / (g * g);
    out.f2 = 2.0 * r * r * n * ((s1 * s1 + s * s2) * g + 4.0 * s * s * s1 * s1) / (g * g * g);
    return out;
}

Radial elliptic_f(const SolutionParams& sp, double t) {
    const double k2 = (sp.B - sp.C) / (sp.B - sp.A); // >= 1
    const double mu2 = sp.k.value() * sp.k.value();
    const double r = sp.r;
    const EllipticEval e = jacobi_sn_cn_dn(r * t + sp.t0, sp.k);
    const double s = e.sn;
    const double s1 = e.cn * e.dn;
    const double s2 = sn_second(s, mu2);
    const double d = k2 - s * s; // >= k2 - 1 > 0
    Radial out;
    out.f = (sp.A * k2 - sp.C * s * s) / d;
    out.f1 = 2.0 * r * k2 * (sp.A - sp.C) * s * s1 / (d * d);
    out.f2 = 2.0 * r * r * k2 * (sp.A - sp.C) * ((s1 * s1 + s * s2) * d + 4.0 * s * s * s1 * s1) /
             (d * d * d);
    return out;
}

// sigma = sqrt(f) and derivatives; only for families with f bounded away
// from zero (annulus, general elliptic).
SignedRadial from_radial(const Radial& f) {
    const double rho = std::sqrt(f.f);
    return {rho, f.f1 / (2.0 * rho), f.f2 / (2.0 * rho) - f.f1 * f.f1 / (4.0 * rho * f.f)};
}

double radial_J(const SolutionParams& sp, double t) {
    switch (sp.tag.kind) {
        case CaseKind::PlanarBounded: {
            const SignedRadial r = disc_sigma(sp, t);
            return r.s * r.s;
        }
        case CaseKind::PlanarSech: {
            const SignedRadial r = sech_sigma(sp, t);
            return r.s * r.s;
        }
        case CaseKind::PlanarAnnulus:
            return annulus_f(sp, t).f;
        case CaseKind::GeneralElliptic:
            return elliptic_f(sp, t).f;
        default:
            throw ContractViolation("no radial profile for this case");
    }
}

// dJ/dt = f'(t); curvature input of the dense cells below.
double radial_J1(const SolutionParams& sp, double t) {
    switch (sp.tag.kind) {
        case CaseKind::PlanarBounded: {
            const SignedRadial r = disc_sigma(sp, t);
            return 2.0 * r.s * r.s1;
        }
        case CaseKind::PlanarSech: {
            const SignedRadial r = sech_sigma(sp, t);
            return 2.0 * r.s * r.s1;
        }
        case CaseKind::PlanarAnnulus:
            return annulus_f(sp, t).f1;
        case CaseKind::GeneralElliptic:
            return elliptic_f(sp, t).f1;
        default:
            throw ContractViolation("no radial profile for this case");
    }
}

// Planar assembly: the curve lives in the vertical half-plane at phi0, with
// the signed radial coordinate along it. zint = integral of J from 0 to t.
void planar_kinematics(const SolutionParams& sp, double t, const SignedRadial& r, double zint,
                       Vec3* pos, Vec3* vel, Vec3* acc) {
    const double q0 = sp.tag.inv.q0;
    const double cp = std::cos(sp.tag.inv.phi0);
    const double sn = std::sin(sp.tag.inv.phi0);
    if (pos) *pos = {r.s * cp, r.s * sn, sp.tag.inv.z0 + q0 * t - 0.5 * zint};
    if (vel) *vel = {r.s1 * cp, r.s1 * sn, q0 - 0.5 * r.s * r.s};
    if (acc) *acc = {r.s2 * cp, r.s2 * sn, -r.s * r.s1};
}

void elliptic_kinematics(const SolutionParams& sp, double t, double zint, double phint,
                         Vec3* pos, Vec3* vel, Vec3* acc) {
    const Radial f = elliptic_f(sp, t);
    const SignedRadial rho = from_radial(f);
    const double p0 = sp.tag.inv.p0;
    const double q0 = sp.tag.inv.q0;
    const double phi = sp.tag.inv.phi0 + p0 * phint;
    const double phi1 = p0 / f.f;
    const double phi2 = -p0 * f.f1 / (f.f * f.f);
    const double cp = std::cos(phi);
    const double sn = std::sin(phi);
    if (pos) *pos = {rho.s * cp, rho.s * sn, sp.tag.inv.z0 + q0 * t - 0.5 * zint};
    if (vel) {
        *vel = {rho.s1 * cp - rho.s * phi1 * sn, rho.s1 * sn + rho.s * phi1 * cp,
                q0 - 0.5 * f.f};
    }
    if (acc) {
        const double ar = rho.s2 - rho.s * phi1 * phi1;      // radial
        const double at = 2.0 * rho.s1 * phi1 + rho.s * phi2; // transverse
        *acc = {ar * cp - at * sn, ar * sn + at * cp, -0.5 * f.f1};
    }
}

void helix_kinematics(double om, const State6& ic, double t, Vec3* pos, Vec3* vel, Vec3* acc) {
    const double c = std::cos(om * t);
    const double s = std::sin(om * t);
    const double x = ic.pos.x * c + ic.vel.x / om * s;
    const double y = ic.pos.y * c + ic.vel.y / om * s;
    if (pos) *pos = {x, y, ic.pos.z + ic.vel.z * t};
    if (vel) *vel = {ic.vel.x * c - ic.pos.x * om * s, ic.vel.y * c - ic.pos.y * om * s, ic.vel.z};
    if (acc) *acc = {-om * om * x, -om * om * y, 0.0};
}

void classical_kinematics(double s, const State6& ic, double t, Vec3* pos, Vec3* vel, Vec3* acc) {
    const double u0 = ic.vel.x;
    const double v0 = ic.vel.y;
    const double cs = std::cos(s * t);
    const double sn = std::sin(s * t);
    if (pos) {
        *pos = {u0 / s * sn + v0 / s * cs + ic.pos.x - v0 / s,
                -u0 / s * cs + v0 / s * sn + ic.pos.y + u0 / s,
                ic.vel.z * t + ic.pos.z};
    }
    if (vel) *vel = {u0 * cs - v0 * sn, u0 * sn + v0 * cs, ic.vel.z};
    if (acc) *acc = {-s * (u0 * sn + v0 * cs), s * (u0 * cs - v0 * sn), 0.0};
}

void assign_roots(SolutionParams& sp) {
    const CubicProfile& cu = sp.tag.cubic;
    if (cu.n_real == 3) {
        sp.C = cu.roots[0];
        sp.A = cu.roots[1];
        sp.B = cu.roots[2];
    } else if (cu.n_real == 2) {
        sp.C = cu.roots[0];
        sp.A = cu.roots[0];
        sp.B = cu.roots[1];
    } else {
        sp.C = sp.A = sp.B = cu.roots[0];
    }
}

// Clamp f0 = rho0^2 into the turning band [A, B]; reject beyond tolerance.
double banded_f0(const SolutionParams& sp, double rho0) {
    const double f0 = rho0 * rho0;
    const double tol_a = 1e-9 * std::max(1.0, std::fabs(sp.A));
    const double tol_b = 1e-9 * std::max(1.0, std::fabs(sp.B));
    if (f0 < sp.A - tol_a || f0 > sp.B + tol_b) {
        throw InconsistentIcError("initial radius outside the admissible turning band");
    }
    return std::clamp(f0, sp.A, sp.B);
}

// Phase shift on the principal branch: sn(t0) = s0 with the sign of f'(0)
// selecting between the rising and falling monotone branch.
double seed_t0(double s0, Modulus k, double fprime0) {
    const double tt = incomplete_elliptic_f(std::asin(std::clamp(s0, 0.0, 1.0)), k);
    if (fprime0 >= 0.0) return tt;
    return 2.0 * complete_elliptic_k(k) - tt;
}

} // namespace

SolutionParams solve_params(const CaseTag& tag, const InitialInvariants& inv, const State6& ic) {
    SolutionParams sp;
    sp.tag = tag;
    sp.tag.inv = inv;
    assign_roots(sp);
    const double fp0 = 2.0 * (ic.pos.x * ic.vel.x + ic.pos.y * ic.vel.y); // f'(0)
    sp.eps = fp0 >= 0.0 ? 1.0 : -1.0;

    switch (tag.kind) {
        case CaseKind::PlanarSech: {
            const double f0 = banded_f0(sp, inv.rho0); // band [0, 4]
            const double rho0 = std::sqrt(f0);
            const double t0m = rho0 > 0.0 ? std::acosh(2.0 / rho0) : 0.0;
            sp.t0 = fp0 >= 0.0 ? t0m : -t0m;
            return sp;
        }
        case CaseKind::PlanarBounded: {
            const double a = inv.q0 + 1.0;
            sp.k = Modulus(std::sqrt(0.5 * a));
            const double f0 = banded_f0(sp, inv.rho0);
            const double s0 = std::sqrt(2.0 / a) * std::sqrt(f0 / (f0 - 2.0 * (inv.q0 - 1.0)));
            sp.t0 = seed_t0(s0, sp.k, fp0);
            return sp;
        }
        case CaseKind::PlanarAnnulus: {
            const double m = std::sqrt(0.5 * (inv.q0 + 1.0));
            sp.k = Modulus(1.0 / m);
            sp.r = m;
            const double f0 = banded_f0(sp, inv.rho0);
            const double s0 = m * std::sqrt((f0 - 2.0 * (inv.q0 - 1.0)) / f0);
            sp.t0 = seed_t0(s0, sp.k, fp0);
            return sp;
        }
        case CaseKind::GeneralElliptic: {
            const double k2 = (sp.B - sp.C) / (sp.B - sp.A);
            sp.k = Modulus(std::sqrt(1.0 / k2));
            sp.r = 0.5 * std::sqrt(sp.B - sp.C);
            const double f0 = banded_f0(sp, inv.rho0);
            const double s0 = std::sqrt(k2 * (f0 - sp.A) / (f0 - sp.C));
            sp.t0 = seed_t0(s0, sp.k, fp0);
            return sp;
        }
        case CaseKind::HelixCaseII: {
            const double w0 = ic.vel.z;
            if (w0 >= 0.0) throw ContractViolation("circular helix requires w0 < 0");
            sp.eps = tag.orientation;
            sp.r = std::sqrt(-w0);
            sp.t0 = 0.0;
            sp.A = sp.B = inv.rho0 * inv.rho0;
            return sp;
        }
        case CaseKind::ClassicalField: {
            sp.s = tag.strength;
            if (sp.s == 0.0) {
                throw DomainError("zero strength gives a straight line, not a helix");
            }
            return sp;
        }
        case CaseKind::AxisDegenerate:
        case CaseKind::NonExistent:
            break;
    }
    std::string msg = "no closed form for case " + to_string(tag.kind);
    if (!tag.reason.empty()) msg += " (" + tag.reason + ")";
    throw ContractViolation(msg);
}

Vec3 eval_planar_q0_zero(const SolutionParams& p, double t) {
    if (p.tag.kind != CaseKind::PlanarBounded || std::fabs(p.tag.inv.q0) > kEpsClass) {
        throw ContractViolation("params do not describe the q0 = 0 disc case");
    }
    return eval_planar_general(p, t);
}

Vec3 eval_planar_q0_one(const SolutionParams& p, double t) {
    if (p.tag.kind != CaseKind::PlanarSech) {
        throw ContractViolation("params do not describe the q0 = 1 case");
    }
    const double zint = 4.0 * (std::tanh(t - p.t0) + std::tanh(p.t0));
    Vec3 pos;
    planar_kinematics(p, t, sech_sigma(p, t), zint, &pos, nullptr, nullptr);
    return pos;
}

Vec3 eval_planar_general(const SolutionParams& p, double t) {
    SignedRadial r;
    if (p.tag.kind == CaseKind::PlanarBounded) {
        r = disc_sigma(p, t);
    } else if (p.tag.kind == CaseKind::PlanarAnnulus) {
        r = from_radial(annulus_f(p, t));
    } else {
        throw ContractViolation("params do not describe a planar sn case");
    }
    const double zint =
        quad_adaptive([&p](double u) { return radial_J(p, u); }, 0.0, t, 1e-11);
    Vec3 pos;
    planar_kinematics(p, t, r, zint, &pos, nullptr, nullptr);
    return pos;
}

Vec3 eval_general_elliptic(const SolutionParams& p, double t) {
    if (p.tag.kind != CaseKind::GeneralElliptic) {
        throw ContractViolation("params do not describe the general elliptic case");
    }
    const double zint =
        quad_adaptive([&p](double u) { return radial_J(p, u); }, 0.0, t, 1e-11);
    const double phint = quad_adaptive(
        [&p](double u) { return 1.0 / std::max(radial_J(p, u), 1e-10); }, 0.0, t, 1e-11);
    Vec3 pos;
    elliptic_kinematics(p, t, zint, phint, &pos, nullptr, nullptr);
    return pos;
}

Vec3 eval_helix_case_ii(const SolutionParams& p, const State6& ic, double t) {
    (void)p;
    if (ic.vel.z >= 0.0) throw ContractViolation("circular helix requires w0 < 0");
    Vec3 pos;
    helix_kinematics(std::sqrt(-ic.vel.z), ic, t, &pos, nullptr, nullptr);
    return pos;
}

Vec3 eval_classical_helix(double s, const State6& ic, double t) {
    if (s == 0.0) throw DomainError("zero strength gives a straight line, not a helix");
    Vec3 pos;
    classical_kinematics(s, ic, t, &pos, nullptr, nullptr);
    return pos;
}

CurvatureTorsion classical_curvature_torsion(double s, double w0) {
    if (std::fabs(w0) > 1.0 + 1e-12) {
        throw DomainError("|w0| <= 1 is required by unit speed");
    }
    const double c = std::max(0.0, 1.0 - w0 * w0);
    return {std::fabs(s) * std::sqrt(c), s * w0};
}

ClosedFormTrajectory::ClosedFormTrajectory(const KillingField& field, const State6& ic,
                                           double t_end)
    : field_(field), ic_(to_canonical_frame(field.axis, ic)) {
    const CaseTag tag = classify(ic, field);
    params_ = solve_params(tag, tag.inv, ic_);

    const CaseKind kind = params_.tag.kind;
    use_grid_ = kind == CaseKind::PlanarBounded || kind == CaseKind::PlanarAnnulus ||
                kind == CaseKind::GeneralElliptic;
    need_inv_ = kind == CaseKind::GeneralElliptic;
    if (!use_grid_) return;

    // Margin covers finite-difference probes slightly outside [0, t_end].
    grid_h_ = 0.0025;
    grid_t0_ = -0.1;
    const double hi = std::max(t_end, 0.0) + 0.1;
    const size_t cells = static_cast<size_t>(std::ceil((hi - grid_t0_) / grid_h_));
    cum_j_.resize(cells + 1);
    node_j_.resize(cells + 1);
    der_j_.resize(cells + 1);
    if (need_inv_) {
        cum_inv_.resize(cells + 1);
        node_inv_.resize(cells + 1);
        der_inv_.resize(cells + 1);
    }
    const auto j = [this](double u) { return radial_J(params_, u); };
    const auto inv_j = [this](double u) {
        const double v = radial_J(params_, u);
        if (v < 1e-10) precision_flag_ = true;
        return 1.0 / std::max(v, 1e-10);
    };
    cum_j_[0] = 0.0;
    if (need_inv_) cum_inv_[0] = 0.0;
    for (size_t i = 0; i <= cells; ++i) {
        const double b = grid_t0_ + grid_h_ * static_cast<double>(i);
        if (i > 0) cum_j_[i] = cum_j_[i - 1] + quad_adaptive(j, b - grid_h_, b, 1e-12);
        node_j_[i] = j(b);
        der_j_[i] = radial_J1(params_, b);
        if (need_inv_) {
            if (i > 0)
                cum_inv_[i] = cum_inv_[i - 1] + quad_adaptive(inv_j, b - grid_h_, b, 1e-12);
            node_inv_[i] = inv_j(b);
            // d/dt (1/J) = -J'/J^2, with the same floor as the integrand
            const double v = std::max(node_j_[i], 1e-10);
            der_inv_[i] = -der_j_[i] / (v * v);
        }
    }
    cum_j_zero_ = lookup(cum_j_, node_j_, der_j_, 0.0);
    if (need_inv_) cum_inv_zero_ = lookup(cum_inv_, node_inv_, der_inv_, 0.0);
}

double ClosedFormTrajectory::lookup(const std::vector<double>& cum,
                                    const std::vector<double>& node,
                                    const std::vector<double>& der, double t) const {
    const double x = (t - grid_t0_) / grid_h_;
    const auto i = static_cast<size_t>(
        std::clamp(std::floor(x), 0.0, static_cast<double>(cum.size() - 2)));
    const double th = x - static_cast<double>(i);
    // Quintic Hermite in the cell: value, integrand and integrand slope are
    // matched exactly at both ends, so the dense output is C2 across nodes
    // and its interpolation error is below rounding at this cell width.
    const double t2 = th * th;
    const double t3 = t2 * th;
    const double t4 = t3 * th;
    const double t5 = t4 * th;
    const double h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    const double h1 = th - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    const double h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double h3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    const double h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    const double h5 = 0.5 * t3 - t4 + 0.5 * t5;
    const double H = grid_h_;
    return cum[i] * h0 + H * node[i] * h1 + H * H * der[i] * h2 + cum[i + 1] * h3 +
           H * node[i + 1] * h4 + H * H * der[i + 1] * h5;
}

double ClosedFormTrajectory::integral_J(double t) const {
    const double hi = grid_t0_ + grid_h_ * static_cast<double>(cum_j_.size() - 1);
    if (t >= grid_t0_ && t <= hi) return lookup(cum_j_, node_j_, der_j_, t) - cum_j_zero_;
    return quad_adaptive([this](double u) { return radial_J(params_, u); }, 0.0, t, 1e-11);
}

double ClosedFormTrajectory::integral_inv_J(double t) const {
    const double hi = grid_t0_ + grid_h_ * static_cast<double>(cum_inv_.size() - 1);
    if (t >= grid_t0_ && t <= hi)
        return lookup(cum_inv_, node_inv_, der_inv_, t) - cum_inv_zero_;
    return quad_adaptive([this](double u) { return 1.0 / std::max(radial_J(params_, u), 1e-10); },
                         0.0, t, 1e-11);
}

void ClosedFormTrajectory::kinematics(double t, Vec3* pos, Vec3* vel, Vec3* acc) const {
    switch (params_.tag.kind) {
        case CaseKind::PlanarBounded:
            planar_kinematics(params_, t, disc_sigma(params_, t), pos ? integral_J(t) : 0.0,
                              pos, vel, acc);
            return;
        case CaseKind::PlanarSech: {
            const double zint = 4.0 * (std::tanh(t - params_.t0) + std::tanh(params_.t0));
            planar_kinematics(params_, t, sech_sigma(params_, t), zint, pos, vel, acc);
            return;
        }
        case CaseKind::PlanarAnnulus:
            planar_kinematics(params_, t, from_radial(annulus_f(params_, t)),
                              pos ? integral_J(t) : 0.0, pos, vel, acc);
            return;
        case CaseKind::GeneralElliptic:
            // The swept angle steers vel and acc as well as pos.
            elliptic_kinematics(params_, t, pos ? integral_J(t) : 0.0, integral_inv_J(t),
                                pos, vel, acc);
            return;
        case CaseKind::HelixCaseII:
            helix_kinematics(params_.r, ic_, t, pos, vel, acc);
            return;
        case CaseKind::ClassicalField:
            classical_kinematics(params_.s, ic_, t, pos, vel, acc);
            return;
        default:
            throw ContractViolation("no closed form for case " + to_string(params_.tag.kind));
    }
}

Vec3 ClosedFormTrajectory::position(double t) const {
    Vec3 p;
    kinematics(t, &p, nullptr, nullptr);
    return from_canonical_frame(field_.axis, p);
}

State6 ClosedFormTrajectory::state(double t) const {
    Vec3 p;
    Vec3 v;
    kinematics(t, &p, &v, nullptr);
    return {from_canonical_frame(field_.axis, p), from_canonical_frame(field_.axis, v)};
}

Vec3 ClosedFormTrajectory::acceleration(double t) const {
    Vec3 a;
    kinematics(t, nullptr, nullptr, &a);
    return from_canonical_frame(field_.axis, a);
}

Trajectory ClosedFormTrajectory::sample(double t_end, double dt) const {
    if (!(t_end > 0.0) || !(dt > 0.0)) {
        throw DomainError("sample requires positive t_end and dt");
    }
    const long n = std::lround(t_end / dt);
    Trajectory out;
    out.reserve(static_cast<size_t>(n) + 1);
    const bool rot = field_.kind == KillingField::Kind::Rotation;

    Vec3 rp;
    Vec3 rv;
    kinematics(0.0, &rp, &rv, nullptr);
    const double c0 = rv.x * rp.y - rv.y * rp.x;
    const double q0 = rv.z + 0.5 * (rp.x * rp.x + rp.y * rp.y);

    for (long i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) * dt;
        Vec3 cp;
        Vec3 cv;
        kinematics(t, &cp, &cv, nullptr);
        TrajectorySample s;
        s.t = t;
        s.pos = from_canonical_frame(field_.axis, cp);
        s.vel = from_canonical_frame(field_.axis, cv);
        s.speed_drift = std::fabs(norm(cv) - 1.0);
        if (rot) {
            s.p0_drift = std::fabs((cv.x * cp.y - cv.y * cp.x) - c0);
            s.q0_drift = std::fabs(cv.z + 0.5 * (cp.x * cp.x + cp.y * cp.y) - q0);
        }
        out.push_back(s);
    }
    return out;
}

} // namespace magline
