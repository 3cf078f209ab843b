#pragma once

#include "magline/errors.hpp"

namespace magline {

/// Elliptic modulus k, valid on the closed interval [0, 1].
/// Construction outside that range throws DomainError.
class Modulus {
public:
    explicit Modulus(double k);
    double value() const { return k_; }

private:
    double k_;
};

/// Jacobi amplitude and the three basic elliptic functions at one argument.
struct EllipticEval {
    double u;
    double sn;
    double cn;
    double dn;
    double am;
};

/// Complete elliptic integral of the first kind K(k).
/// Throws DivergenceError at k = 1.
double complete_elliptic_k(Modulus k);

/// Incomplete elliptic integral of the first kind F(phi, k), extended to all
/// real phi by the quasi-periodic law F(phi + n*pi, k) = F(phi, k) + 2n K(k).
/// At k = 1 the integral diverges for |phi| >= pi/2 (DivergenceError).
double incomplete_elliptic_f(double phi, Modulus k);

/// Jacobi sn, cn, dn, am at real argument u. Degenerates to the circular
/// functions at k = 0 and to the hyperbolic ones at k = 1; the hyperbolic
/// branch also absorbs moduli with 1 - k^2 below 1e-14.
EllipticEval jacobi_sn_cn_dn(double u, Modulus k);

/// Inverse of sn on the principal branch: returns u with sn(u, k) = y,
/// u in [-K, K]. Requires |y| <= 1.
double inverse_sn(double y, Modulus k);

/// Carlson symmetric integral R_F(x, y, z); x, y, z >= 0, at most one zero.
/// Exposed because it is the evaluation core of the integrals above.
double carlson_rf(double x, double y, double z);

} // namespace magline
