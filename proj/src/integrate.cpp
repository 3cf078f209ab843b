#include "magline/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "magline/errors.hpp"

namespace magline {

namespace {

using Y6 = std::array<double, 6>;

Y6 pack(const State6& s) {
    return {s.pos.x, s.pos.y, s.pos.z, s.vel.x, s.vel.y, s.vel.z};
}

State6 unpack(const Y6& y) {
    return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
}

Y6 axpy(const Y6& y, double h, const Y6& d) {
    Y6 r;
    for (int i = 0; i < 6; ++i) r[i] = y[i] + h * d[i];
    return r;
}

// Dormand-Prince 4(5) tableau. The last stage is FSAL.
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kA71 = 35.0 / 384, kA73 = 500.0 / 1113, kA74 = 125.0 / 192,
                 kA75 = -2187.0 / 6784, kA76 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
// Coefficients of the fourth order continuous extension.
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

struct DenseStep {
    Y6 r1, r2, r3, r4, r5;
    Y6 eval(double theta) const {
        Y6 out;
        const double th1 = 1.0 - theta;
        for (int i = 0; i < 6; ++i) {
            out[i] = r1[i] + theta * (r2[i] + th1 * (r3[i] + theta * (r4[i] + th1 * r5[i])));
        }
        return out;
    }
};

} // namespace

DriftReport drift_report(const Trajectory& tr) {
    DriftReport r;
    for (const TrajectorySample& s : tr) {
        r.max_speed_drift = std::max(r.max_speed_drift, s.speed_drift);
        r.max_p0_drift = std::max(r.max_p0_drift, s.p0_drift);
        r.max_q0_drift = std::max(r.max_q0_drift, s.q0_drift);
    }
    return r;
}

Trajectory integrate_trajectory(const KillingField& f, const State6& ic,
                                const IntegratorConfig& cfg) {
    if (std::fabs(norm(ic.vel) - 1.0) > 1e-12) {
        throw DomainError("integrate_trajectory requires a unit-speed initial velocity");
    }
    if (!(cfg.t_end > 0.0) || !(cfg.sample_dt > 0.0) || !(cfg.max_step > 0.0)) {
        throw DomainError("integrate_trajectory requires positive t_end, sample_dt, max_step");
    }

    const bool track_invariants = f.kind == KillingField::Kind::Rotation;
    const State6 icc = to_canonical_frame(f.axis, ic);
    const double c0 = icc.vel.x * icc.pos.y - icc.pos.x * icc.vel.y; // u0*y0 - x0*v0
    const double q0 = 0.5 * (icc.pos.x * icc.pos.x + icc.pos.y * icc.pos.y) + icc.vel.z;

    auto rhs = [&f](const Y6& y) -> Y6 {
        const State6 d = magnetic_rhs(f, unpack(y));
        return pack(State6{d.pos, d.vel});
    };

    auto make_sample = [&](double t, const Y6& y) {
        TrajectorySample s;
        s.t = t;
        s.pos = {y[0], y[1], y[2]};
        s.vel = {y[3], y[4], y[5]};
        s.speed_drift = std::fabs(norm(s.vel) - 1.0);
        if (track_invariants) {
            const Vec3 cp = to_canonical_frame(f.axis, s.pos);
            const Vec3 cv = to_canonical_frame(f.axis, s.vel);
            s.p0_drift = std::fabs((cv.x * cp.y - cv.y * cp.x) - c0);
            s.q0_drift = std::fabs(cv.z + 0.5 * (cp.x * cp.x + cp.y * cp.y) - q0);
        }
        return s;
    };

    Y6 y = pack(ic);
    double t = 0.0;
    Y6 k1 = rhs(y);

    // Step seed in the spirit of the classic starting-step heuristic.
    double h;
    {
        double d0 = 0.0, d1 = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::fabs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k1[i] / sc) * (k1[i] / sc);
        }
        h = (d1 > 1e-20) ? 0.01 * std::sqrt(d0 / d1) : 1e-6;
        h = std::clamp(h, 1e-8, cfg.max_step);
    }

    const long nsamp = std::lround(cfg.t_end / cfg.sample_dt);
    Trajectory out;
    out.reserve(static_cast<size_t>(nsamp) + 1);
    out.push_back(make_sample(0.0, y));
    long next_k = 1;

    double facold = 1e-4;
    int consecutive_rejects = 0;

    while (t < cfg.t_end - 1e-14) {
        h = std::min({h, cfg.max_step, cfg.t_end - t});
        if (h < 1e-13 * std::max(1.0, std::fabs(t))) {
            throw IntegrationFailure("step size underflow", t);
        }

        const Y6 k2 = rhs(axpy(y, h * kA21, k1));
        Y6 tmp;
        for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
        const Y6 k3 = rhs(tmp);
        for (int i = 0; i < 6; ++i)
            tmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
        const Y6 k4 = rhs(tmp);
        for (int i = 0; i < 6; ++i)
            tmp[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
        const Y6 k5 = rhs(tmp);
        for (int i = 0; i < 6; ++i)
            tmp[i] = y[i] +
                     h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] + kA64 * k4[i] + kA65 * k5[i]);
        const Y6 k6 = rhs(tmp);
        Y6 ynew;
        for (int i = 0; i < 6; ++i)
            ynew[i] = y[i] +
                      h * (kA71 * k1[i] + kA73 * k3[i] + kA74 * k4[i] + kA75 * k5[i] + kA76 * k6[i]);
        const Y6 k7 = rhs(ynew);

        double err = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double e =
                h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] + kE6 * k6[i] +
                     kE7 * k7[i]);
            const double sc =
                cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 6.0);

        const double fac11 = std::pow(std::max(err, 1e-32), 0.2);
        if (err <= 1.0) {
            consecutive_rejects = 0;
            DenseStep dense;
            dense.r1 = y;
            for (int i = 0; i < 6; ++i) {
                const double ydiff = ynew[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                dense.r2[i] = ydiff;
                dense.r3[i] = bspl;
                dense.r4[i] = ydiff - h * k7[i] - bspl;
                dense.r5[i] = h * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] + kD5 * k5[i] +
                                   kD6 * k6[i] + kD7 * k7[i]);
            }
            while (next_k <= nsamp && next_k * cfg.sample_dt <= t + h + 1e-12) {
                const double ts = next_k * cfg.sample_dt;
                const double theta = std::clamp((ts - t) / h, 0.0, 1.0);
                out.push_back(make_sample(ts, dense.eval(theta)));
                ++next_k;
            }
            t += h;
            y = ynew;
            k1 = k7;
            // PI controller: h_new = h / clamp((err^0.2 / err_old^0.04) / 0.9, 1/10, 5)
            double fac = fac11 / std::pow(facold, 0.04);
            fac = std::max(0.1, std::min(5.0, fac / 0.9));
            h = h / fac;
            facold = std::max(err, 1e-4);
        } else {
            h = h / std::min(5.0, fac11 / 0.9);
            if (++consecutive_rejects > 200) {
                throw IntegrationFailure("persistent step rejection", t);
            }
        }
    }
    return out;
}

namespace {

double finite_or_throw(const std::function<double(double)>& fn, double x) {
    const double v = fn(x);
    if (!std::isfinite(v)) {
        throw DomainError("quad_adaptive: integrand is not finite inside the interval");
    }
    return v;
}

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& fn, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
    if (depth > 60) {
        throw AccuracyError("quad_adaptive: subdivision limit reached");
    }
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = finite_or_throw(fn, lm);
    const double frm = finite_or_throw(fn, rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double quad_adaptive(const std::function<double(double)>& fn, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = finite_or_throw(fn, a);
    const double fb = finite_or_throw(fn, b);
    const double fm = finite_or_throw(fn, 0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, a, b);
    return adapt(fn, a, b, fa, fm, fb, whole, std::max(tol, 1e-15), 0);
}

double quad_riemann(const std::function<double(double)>& fn, double a, double b, int n) {
    if (n <= 0) {
        throw DomainError("quad_riemann requires n >= 1");
    }
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += fn(a + h * i);
    }
    return h * sum;
}

} // namespace magline
