#pragma once

// Independent reference implementations used by the tests. Everything here
// is deliberately naive: different algorithms than the library under test,
// so agreement is evidence rather than tautology.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "magline/vec3.hpp"

namespace oracle {

/// Complete elliptic integral K(k) by the arithmetic-geometric mean,
/// independent of the Carlson route used by the library.
inline double agm_complete_k(double k) {
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    // quadratic convergence: far fewer than 40 sweeps reach the ulp plateau
    for (int i = 0; i < 40 && a - b > 4e-16 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

/// Composite Simpson rule, n even panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// F(phi, k) for |phi| <= pi/2 by brute-force Simpson on the defining
/// integrand 1/sqrt(1 - k^2 sin^2 theta).
inline double incomplete_f_reference(double phi, double k) {
    if (phi == 0.0)
        return 0.0;
    auto g = [k](double th) {
        double s = std::sin(th);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
    };
    return simpson(g, 0.0, phi, 20000);
}

/// Degree-N Taylor polynomial of the rotational trajectory about t = 0,
/// from the recurrences the equation of motion imposes on the coefficients:
///   x'' = x z',  y'' = y z',  z'' = -(x x' + y y').
/// Valid near t = 0 only; used to pin the integrator at small times.
struct TaylorSolution {
    std::vector<double> a, b, c; // coefficients of x, y, z

    TaylorSolution(const magline::State6& ic, int order) {
        int n = order + 2;
        a.assign(n, 0.0);
        b.assign(n, 0.0);
        c.assign(n, 0.0);
        a[0] = ic.pos.x; b[0] = ic.pos.y; c[0] = ic.pos.z;
        a[1] = ic.vel.x; b[1] = ic.vel.y; c[1] = ic.vel.z;
        for (int k = 0; k + 2 < n; ++k) {
            double sa = 0.0, sb = 0.0, sc = 0.0;
            for (int i = 0; i <= k; ++i) {
                int j = k - i;
                sa += a[i] * (j + 1) * c[j + 1];
                sb += b[i] * (j + 1) * c[j + 1];
                sc -= a[i] * (j + 1) * a[j + 1] + b[i] * (j + 1) * b[j + 1];
            }
            double w = 1.0 / ((k + 1.0) * (k + 2.0));
            a[k + 2] = sa * w;
            b[k + 2] = sb * w;
            c[k + 2] = sc * w;
        }
    }

    magline::Vec3 position(double t) const {
        double px = 0.0, py = 0.0, pz = 0.0;
        for (int i = int(a.size()) - 1; i >= 0; --i) {
            px = px * t + a[i];
            py = py * t + b[i];
            pz = pz * t + c[i];
        }
        return {px, py, pz};
    }
};

struct FrenetEstimate {
    double kappa = 0.0;
    double tau = 0.0;
};

/// Curvature and torsion from uniformly sampled positions by central
/// differences (fourth order for gamma', gamma''; Richardson-extrapolated
/// for gamma'''). Index i must sit at least 4 samples from either end.
inline FrenetEstimate frenet_numeric(const std::vector<magline::Vec3>& p, int i, double h) {
    using magline::Vec3;
    auto d1 = [&](int s) {
        return (1.0 / (12.0 * h * s)) *
               (p[i - 2 * s] - p[i + 2 * s] + 8.0 * (p[i + s] - p[i - s]));
    };
    auto d2 = [&](int s) {
        return (1.0 / (12.0 * h * s * h * s)) *
               (-1.0 * (p[i + 2 * s] + p[i - 2 * s]) + 16.0 * (p[i + s] + p[i - s]) -
                30.0 * p[i]);
    };
    auto d3 = [&](int s) {
        return (1.0 / (2.0 * h * s * h * s * h * s)) *
               (p[i + 2 * s] - p[i - 2 * s] + 2.0 * (p[i - s] - p[i + s]));
    };
    Vec3 g1 = d1(1);
    Vec3 g2 = d2(1);
    Vec3 g3 = (1.0 / 3.0) * (4.0 * d3(1) - d3(2));
    Vec3 c12 = cross(g1, g2);
    double n1 = norm(g1), n12 = norm(c12);
    FrenetEstimate fe;
    fe.kappa = n12 / (n1 * n1 * n1);
    fe.tau = dot(c12, g3) / (n12 * n12);
    return fe;
}

} // namespace oracle
