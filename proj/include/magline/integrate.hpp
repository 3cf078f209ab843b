#pragma once

#include <functional>
#include <vector>

#include "magline/fields.hpp"
#include "magline/vec3.hpp"

namespace magline {

/// One dense-output sample of a numerically integrated trajectory.
/// speed_drift is ||vel| - 1|. The two prime-integral drifts are measured in
/// the field's canonical frame for rotational fields and zero-filled for
/// translations:
///   p0_drift = |(vx*y - vy*x) - (u0*y0 - x0*v0)|
///   q0_drift = |vz + (x^2 + y^2)/2 - q0|
struct TrajectorySample {
    double t = 0.0;
    Vec3 pos;
    Vec3 vel;
    double speed_drift = 0.0;
    double p0_drift = 0.0;
    double q0_drift = 0.0;
};

using Trajectory = std::vector<TrajectorySample>;

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 0.1;
    double t_end = 10.0;
    double sample_dt = 0.01;
};

/// Adaptive Dormand-Prince 4(5) integration of the magnetic trajectory
/// equation, sampled at uniform sample_dt by the fourth order continuous
/// extension of the pair. Requires a unit-speed initial velocity (1e-12).
/// Throws IntegrationFailure on step underflow, carrying the last good time.
Trajectory integrate_trajectory(const KillingField& f, const State6& ic,
                                const IntegratorConfig& cfg);

struct DriftReport {
    double max_speed_drift = 0.0;
    double max_p0_drift = 0.0;
    double max_q0_drift = 0.0;
};

DriftReport drift_report(const Trajectory& tr);

/// Adaptive Simpson quadrature with Richardson end correction; absolute
/// error target tol. Throws DomainError on a non-finite integrand value and
/// AccuracyError when the subdivision limit is hit before convergence.
double quad_adaptive(const std::function<double(double)>& fn, double a, double b,
                     double tol = 1e-10);

/// Plain left-endpoint Riemann sum with n equal panels, kept as a
/// low-accuracy reference pipeline. Error is O(1/n) on C^1 integrands.
double quad_riemann(const std::function<double(double)>& fn, double a, double b, int n);

} // namespace magline
