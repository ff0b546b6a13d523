#include "ashgeo/sampling.hpp"

#include <cmath>
#include <numbers>

namespace ashgeo {

Vec3 random_vector(SplitMix64& rng, double scale) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

Mat3 random_rotation(SplitMix64& rng) {
  // Shoemake's uniform quaternion.
  const double u1 = rng.uniform();
  const double u2 = rng.uniform() * 2.0 * std::numbers::pi;
  const double u3 = rng.uniform() * 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  Eigen::Quaterniond q(b * std::cos(u3), a * std::sin(u2), a * std::cos(u2), b * std::sin(u3));
  return q.normalized().toRotationMatrix();
}

Mat3 random_spd(SplitMix64& rng, double min_eig, double max_eig) {
  const Mat3 r = random_rotation(rng);
  const Vec3 d{rng.uniform(min_eig, max_eig), rng.uniform(min_eig, max_eig),
               rng.uniform(min_eig, max_eig)};
  Mat3 q = r * d.asDiagonal() * r.transpose();
  return 0.5 * (q + q.transpose());
}

Mat3 random_oriented_frame(SplitMix64& rng) {
  while (true) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.data()[i] = rng.uniform(-1.5, 1.5);
    if (m.determinant() < 0.0) m.col(0) = -m.col(0);
    if (m.determinant() > 0.05) return m;
  }
}

Chart random_field_chart() {
  return Chart::spacetime({-1.0, 1.0}, {{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}});
}

namespace {

// c0 + sum_a c_a x^a + s sin(k . x + phase), optionally with a t term.
Expr random_affine_trig(SplitMix64& rng, double scale, bool with_time) {
  Expr e = Expr(rng.uniform(-scale, scale));
  for (int a = 0; a < 3; ++a) e = e + Expr(rng.uniform(-scale, scale)) * coord(a);
  Expr arg = Expr(rng.uniform(-1.0, 1.0));
  for (int a = 0; a < 3; ++a) arg = arg + Expr(rng.uniform(-1.0, 1.0)) * coord(a);
  if (with_time) {
    e = e + Expr(rng.uniform(-scale, scale)) * time_coord();
    arg = arg + Expr(rng.uniform(-1.0, 1.0)) * time_coord();
  }
  return e + Expr(rng.uniform(-scale, scale)) * sin(arg);
}

ExprMat3 gram_plus_identity(SplitMix64& rng, double c, bool with_time) {
  ExprMat3 b;
  for (auto& row : b) {
    for (auto& x : row) x = random_affine_trig(rng, 0.4, with_time);
  }
  ExprMat3 q;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Expr s = i == j ? Expr(c) : Expr(0.0);
      for (int k = 0; k < 3; ++k) s = s + b[k][i] * b[k][j];
      q[i][j] = s;
      q[j][i] = s;
    }
  }
  return q;
}

}  // namespace

SliceMetric random_metric(SplitMix64& rng) {
  return SliceMetric(gram_plus_identity(rng, 0.5, false));
}

VecField random_vector_field(SplitMix64& rng) {
  VecField f;
  for (int i = 0; i < 3; ++i) {
    Expr quad = Expr(rng.uniform(-0.5, 0.5)) * coord(static_cast<int>(rng.below(3))) *
                coord(static_cast<int>(rng.below(3)));
    f.c[i] = random_affine_trig(rng, 1.0, false) + quad;
  }
  return f;
}

EndoField random_symmetric_weingarten(SplitMix64& rng, const SliceMetric& q) {
  ExprMat3 k;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      k[a][b] = random_affine_trig(rng, 0.6, false);
      k[b][a] = k[a][b];
    }
  }
  // W^b_a = Q^{bc} K_ca
  return {mat_mul(symmetric_inverse(q.components()), k)};
}

SpacetimeSplit random_split(SplitMix64& rng) {
  const double c = rng.uniform(0.2, 0.6);
  const Expr lapse = Expr(1.2) + Expr(c) * sin(Expr(rng.uniform(0.5, 2.0)) * time_coord());
  return SpacetimeSplit(lapse, gram_plus_identity(rng, 0.5, true), random_field_chart());
}

}  // namespace ashgeo
