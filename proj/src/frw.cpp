#include "ashgeo/frw.hpp"

#include <numbers>

#include "ashgeo/error.hpp"

namespace ashgeo {

namespace {

constexpr double kPoleMargin = 0.2;

SliceMetric reference_metric(int kappa) {
  const Expr x1 = coord(0);
  const Expr s2 = sin(coord(1));
  switch (kappa) {
    case 0:
      return SliceMetric::flat();
    case 1: {
      const Expr s1 = sin(x1);
      return SliceMetric::diagonal(1.0, s1 * s1, s1 * s1 * s2 * s2);
    }
    case -1: {
      const Expr sh = Expr(0.5) * (exp(x1) - exp(-x1));
      return SliceMetric::diagonal(1.0, sh * sh, sh * sh * s2 * s2);
    }
    default:
      throw InvalidArgument("unsupported curvature kappa = " + std::to_string(kappa) +
                            " (expected -1, 0 or 1)");
  }
}

std::array<Interval, 3> reference_box(int kappa) {
  constexpr double pi = std::numbers::pi;
  const Interval polar{kPoleMargin, pi - kPoleMargin};
  const Interval azimuth{-pi, pi};
  switch (kappa) {
    case 0:
      return {{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
    case 1:
      return {polar, polar, azimuth};
    default:
      return {Interval{kPoleMargin, 2.0}, polar, azimuth};
  }
}

}  // namespace

FrwModel make_frw(int kappa, const Expr& a, Interval time) {
  const SliceMetric q = reference_metric(kappa);
  for (int i = 0; i < 3; ++i) {
    if (depends_on(a, coord_id(i))) throw InvalidArgument("scale factor must depend on t only");
  }
  constexpr int kProbes = 65;
  for (int k = 0; k < kProbes; ++k) {
    // Probe the open interval, endpoints excluded.
    const double t = time.lo + time.width() * (k + 0.5) / kProbes;
    const double v = eval(a, Binding{}.set(time_id(), t));
    if (!(v > 0.0)) {
      throw InvalidArgument("scale factor is not positive at t = " + std::to_string(t));
    }
  }
  const ExprMat3& qc = q.components();
  ExprMat3 g;
  const Expr a2 = a * a;
  for (int r = 0; r < 3; ++r) {
    for (int c = r; c < 3; ++c) {
      g[r][c] = qc[r][c].is_zero() ? Expr(0.0) : a2 * qc[r][c];
      g[c][r] = g[r][c];
    }
  }
  return FrwModel{kappa, a, q, SpacetimeSplit(Expr(1.0), g, Chart::spacetime(time, reference_box(kappa)))};
}

double hubble(const FrwModel& m, double t0) {
  if (!m.split.time_interval().contains(t0)) {
    throw GeometryError("t0 = " + std::to_string(t0) + " outside the time interval");
  }
  Binding p;
  p.set(time_id(), t0);
  return eval(diff(m.a, time_id()), p) / eval(m.a, p);
}

SliceMetric frw_slice_metric(const FrwModel& m, double t0) { return induce_slice_metric(m.split, t0); }

AshtekarConnection frw_connection(const FrwModel& m, Beta beta, double t0) {
  return AshtekarConnection(beta, frw_slice_metric(m, t0), weingarten_field(m.split, t0));
}

FrwOracles frw_oracles(const FrwModel& m, Beta beta, double t0, const Vec3& x, const Vec3& y,
                       const Vec3& z, const Binding& p) {
  const double h = hubble(m, t0);
  Binding pt = p;
  pt.set(time_id(), t0);
  const double a0 = eval(m.a, pt);
  const double kappa_eff = m.kappa / (a0 * a0);
  const Mat3 q = frw_slice_metric(m, t0).require_positive_definite(pt);
  const Complex b = beta.value();
  const Vec3 xy = ivp<double>(q, x, y);
  FrwOracles out;
  out.W = h * Mat3::Identity();
  out.T = 2.0 * b * h * xy.cast<Complex>();
  out.R = (b * b * h * h - kappa_eff) * ivp<double>(q, xy, z).cast<Complex>();
  return out;
}

}  // namespace ashgeo
