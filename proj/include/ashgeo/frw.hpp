#pragma once

// Friedmann-Robertson-Walker models g = -dt^2 + a(t)^2 q with q of constant
// sectional curvature kappa, and the closed forms of W, T^A and R^A on
// them.

#include "ashgeo/ashtekar.hpp"
#include "ashgeo/geometry.hpp"
#include "ashgeo/hypersurface.hpp"

namespace ashgeo {

struct FrwModel {
  int kappa;
  Expr a;                 // scale factor, a function of t
  SliceMetric reference;  // q
  SpacetimeSplit split;   // f = 1, g_t = a^2 q
};

/// Reference charts:
///   kappa =  0: q = delta on (-1, 1)^3,
///   kappa = +1: q = diag(1, sin^2 x1, sin^2 x1 sin^2 x2) (unit 3-sphere),
///   kappa = -1: q = diag(1, sinh^2 x1, sinh^2 x1 sin^2 x2) (hyperbolic space),
/// with x1, x2 kept away from 0 and pi. The time interval defaults to (-2, 2).
/// Throws InvalidArgument for other kappa, a depending on x, or a <= 0 at
/// any of 65 evenly spaced times in the interval.
FrwModel make_frw(int kappa, const Expr& a, Interval time = {-2.0, 2.0});

/// h = a'/a at t0.
double hubble(const FrwModel& m, double t0);

/// The slice metric a(t0)^2 q.
SliceMetric frw_slice_metric(const FrwModel& m, double t0);

/// AshtekarConnection on the slice t0 with W taken from the spacetime.
AshtekarConnection frw_connection(const FrwModel& m, Beta beta, double t0);

struct FrwOracles {
  Mat3 W;   // h Id
  CVec3 T;  // 2 beta h X . Y
  CVec3 R;  // [(beta h)^2 - kappa_eff] (X . Y) . Z
};

/// Closed forms on the slice t0 at the point p (which binds x1..x3). The
/// product . is that of the induced metric a(t0)^2 q, whose curvature is
/// kappa_eff = kappa / a(t0)^2; this is the curvature entering R.
FrwOracles frw_oracles(const FrwModel& m, Beta beta, double t0, const Vec3& x, const Vec3& y,
                       const Vec3& z, const Binding& p);

}  // namespace ashgeo
