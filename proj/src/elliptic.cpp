#include "magline/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace magline {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 1 - k^2 evaluated without cancellation for k near 1.
double complement_sq(double k) { return (1.0 - k) * (1.0 + k); }

bool near_unit_modulus(double k) { return complement_sq(k) < 1e-14; }

} // namespace

Modulus::Modulus(double k) : k_(k) {
    if (!(k >= 0.0 && k <= 1.0)) {
        throw DomainError("elliptic modulus must lie in [0, 1]");
    }
}

double carlson_rf(double x, double y, double z) {
    // Duplication theorem iteration; each round contracts the spread of the
    // arguments by a factor 4, so the fifth order tail below is ~1e-17.
    constexpr double errtol = 0.0015;
    if (x < 0.0 || y < 0.0 || z < 0.0 || (x + y) == 0.0 || (y + z) == 0.0 || (z + x) == 0.0) {
        throw DomainError("carlson_rf requires nonnegative arguments, at most one zero");
    }
    double ave = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        ave = (x + y + z) / 3.0;
        dx = (ave - x) / ave;
        dy = (ave - y) / ave;
        dz = (ave - z) / ave;
        if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) < errtol) break;
    }
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double complete_elliptic_k(Modulus k) {
    const double kv = k.value();
    if (near_unit_modulus(kv)) {
        throw DivergenceError("K(k) diverges as k -> 1");
    }
    return carlson_rf(0.0, complement_sq(kv), 1.0);
}

double incomplete_elliptic_f(double phi, Modulus k) {
    const double kv = k.value();
    if (near_unit_modulus(kv)) {
        if (std::fabs(phi) >= kPi / 2.0) {
            throw DivergenceError("F(phi, 1) diverges for |phi| >= pi/2");
        }
        return std::atanh(std::sin(phi));
    }
    // Reduce to the principal strip |phi_r| <= pi/2, then add back whole
    // half-periods: F(phi + n*pi) = F(phi) + 2nK.
    const double n = std::round(phi / kPi);
    const double pr = phi - n * kPi;
    double f = 0.0;
    if (pr != 0.0) {
        const double s = std::sin(pr);
        const double c = std::cos(pr);
        const double ks = kv * s;
        f = s * carlson_rf(c * c, 1.0 - ks * ks, 1.0);
    }
    if (n != 0.0) {
        f += 2.0 * n * complete_elliptic_k(k);
    }
    return f;
}

EllipticEval jacobi_sn_cn_dn(double u, Modulus k) {
    const double kv = k.value();
    if (kv < 1e-15) {
        return {u, std::sin(u), std::cos(u), 1.0, u};
    }
    if (near_unit_modulus(kv)) {
        const double sech = 1.0 / std::cosh(u);
        return {u, std::tanh(u), sech, sech, std::atan(std::sinh(u))};
    }

    // Reduce modulo the half period 2K; am(u + 2mK) = am(u) + m*pi restores
    // the signs of sn and cn in one step.
    const double bigk = complete_elliptic_k(k);
    const double m = std::floor(u / (2.0 * bigk) + 0.5);
    const double ur = u - 2.0 * bigk * m;

    // Arithmetic-geometric mean ladder, then the descending amplitude
    // recursion sin(2*phi_{n-1} - phi_n) = (c_n/a_n) sin(phi_n).
    double a[18], b[18], c[18];
    a[0] = 1.0;
    b[0] = std::sqrt(complement_sq(kv));
    c[0] = kv;
    int n = 0;
    while (std::fabs(c[n]) > 1e-15 * a[n] && n < 16) {
        a[n + 1] = 0.5 * (a[n] + b[n]);
        b[n + 1] = std::sqrt(a[n] * b[n]);
        c[n + 1] = 0.5 * (a[n] - b[n]);
        ++n;
    }
    double phi = std::ldexp(a[n] * ur, n);
    for (int i = n; i >= 1; --i) {
        const double t = std::clamp(c[i] * std::sin(phi) / a[i], -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(t));
    }

    const double am = phi + m * kPi;
    const double sn = std::sin(am);
    const double cn = std::cos(am);
    const double ksn = kv * sn;
    const double dn = std::sqrt(1.0 - ksn * ksn); // dn >= k' > 0 on the real axis
    return {u, sn, cn, dn, am};
}

double inverse_sn(double y, Modulus k) {
    if (std::fabs(y) > 1.0) {
        throw DomainError("inverse_sn requires |y| <= 1");
    }
    return incomplete_elliptic_f(std::asin(y), k);
}

} // namespace magline
