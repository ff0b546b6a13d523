#include <cmath>

#include "ashgeo/error.hpp"
#include "ashgeo/levi_civita.hpp"
#include "ashgeo/sampling.hpp"
#include "ashgeo/vecprod.hpp"
#include "doctest.h"

using namespace ashgeo;

namespace {

Vec3 e(int i) { return Vec3::Unit(i); }

}  // namespace

TEST_CASE("ivp on the flat metric is the cross product") {
  const SliceMetric flat = SliceMetric::flat();
  const Binding p{{"x1", 0.1}, {"x2", 0.2}, {"x3", 0.3}};
  CHECK((ivp(flat, e(0), e(1), p) - e(2)).norm() < 1e-15);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 expected = e(i).cross(e(j));
      CHECK((ivp(flat, e(i), e(j), p) - expected).norm() < 1e-15);
      CHECK((ivp_hodge(flat, e(i), e(j), p) - expected).norm() < 1e-15);
    }
  }
}

TEST_CASE("ivp with q = diag(4,1,1)") {
  const SliceMetric q = SliceMetric::diagonal(4.0, 1.0, 1.0);
  const Binding p;
  CHECK((ivp(q, e(0), e(1), p) - 2.0 * e(2)).norm() < 1e-14);
  CHECK((ivp_hodge(q, e(0), e(1), p) - 2.0 * e(2)).norm() < 1e-14);
  // Directly through e = diag(1/2, 1, 1).
  const Frame frame(Vec3(0.5, 1.0, 1.0).asDiagonal());
  CHECK((ivp_with_frame<double>(frame, q.at(p), e(0), e(1)) - 2.0 * e(2)).norm() < 1e-14);
}

TEST_CASE("ivp rejects bad input") {
  Mat3 bad = Mat3::Identity();
  bad(2, 2) = -1.0;
  CHECK_THROWS_AS(ivp<double>(bad, e(0), e(1)), GeometryError);
  CHECK_THROWS_AS(ivp_hodge<double>(bad, e(0), e(1)), GeometryError);
  // A reflected frame is orthonormal but not oriented.
  const Frame reflected(Vec3(1.0, 1.0, -1.0).asDiagonal());
  CHECK_THROWS_AS(ivp_with_frame<double>(reflected, Mat3::Identity(), e(0), e(1)), GeometryError);
}

TEST_CASE("ivp algebraic properties on random samples") {
  SplitMix64 rng(101);
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const Mat3 q = random_spd(rng);
    const Vec3 x = random_vector(rng);
    const Vec3 y = random_vector(rng);
    const Vec3 z = random_vector(rng);
    auto P = [&](const Vec3& a, const Vec3& b) { return ivp<double>(q, a, b); };
    auto ip = [&](const Vec3& a, const Vec3& b) { return inner<double>(q, a, b); };

    worst = std::max(worst, (P(x, y) + P(y, x)).norm());
    worst = std::max(worst, (P(x, x)).norm());
    worst = std::max(worst, std::abs(ip(P(x, y), z) - ip(x, P(y, z))));
    worst = std::max(worst, (P(x, P(y, z)) - (ip(x, z) * y - ip(x, y) * z)).norm());
    worst = std::max(worst, (P(x, P(y, z)) + P(y, P(z, x)) + P(z, P(x, y))).norm());
    worst = std::max(worst, (P(x, y) - ivp_hodge<double>(q, x, y)).norm());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("ivp agrees with the Hodge route") {
  SplitMix64 rng(7);
  for (int n = 0; n < 200; ++n) {
    const Mat3 q = random_spd(rng);
    const Vec3 x = random_vector(rng);
    const Vec3 y = random_vector(rng);
    CHECK((ivp<double>(q, x, y) - ivp_hodge<double>(q, x, y)).norm() < 1e-10);
  }
}

TEST_CASE("ivp does not depend on the oriented frame") {
  SplitMix64 rng(55);
  const Mat3 q = random_spd(rng);
  const Frame base = orthonormal_frame(q);
  const Vec3 x = random_vector(rng);
  const Vec3 y = random_vector(rng);
  const Vec3 ref = ivp_with_frame<double>(base, q, x, y);
  for (int n = 0; n < 50; ++n) {
    const Frame rotated(base.matrix() * random_rotation(rng));
    CHECK((ivp_with_frame<double>(rotated, q, x, y) - ref).norm() < 1e-10);
  }
}

TEST_CASE("ivp extends bilinearly to complex vectors") {
  SplitMix64 rng(3);
  const Mat3 q = random_spd(rng);
  const Vec3 a = random_vector(rng), b = random_vector(rng);
  const Vec3 c = random_vector(rng), d = random_vector(rng);
  const CVec3 x = a.cast<Complex>() + Complex(0, 1) * b.cast<Complex>();
  const CVec3 y = c.cast<Complex>() + Complex(0, 1) * d.cast<Complex>();
  const CVec3 expected = (ivp<double>(q, a, c) - ivp<double>(q, b, d)).cast<Complex>() +
                         Complex(0, 1) * (ivp<double>(q, a, d) + ivp<double>(q, b, c)).cast<Complex>();
  CHECK((ivp<Complex>(q, x, y) - expected).norm() < 1e-10);
}

TEST_CASE("symbolic induced product matches the pointwise one") {
  SplitMix64 rng(19);
  const SliceMetric q = random_metric(rng);
  const InducedProduct prod(q);
  const VecField x = random_vector_field(rng);
  const VecField y = random_vector_field(rng);
  const VecField xy = prod(x, y);
  const Chart chart = random_field_chart();
  for (int n = 0; n < 20; ++n) {
    const Binding p = chart.sample(rng);
    CHECK((xy.at(p) - ivp(q, x.at(p), y.at(p), p)).norm() < 1e-10);
  }
}

TEST_CASE("Leibniz rule for the Levi-Civita connection") {
  SplitMix64 rng(23);
  const SliceMetric q = random_metric(rng);
  const LeviCivita lc(q);
  const InducedProduct prod(q);
  const VecField y = random_vector_field(rng);
  const VecField z = random_vector_field(rng);
  const VecField yz = prod(y, z);
  const Chart chart = random_field_chart();
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const Binding p = chart.sample(rng);
    const Vec3 x = random_vector(rng);
    const Vec3 lhs = lc.cov_deriv(x, yz, p);
    const Vec3 rhs = ivp(q, lc.cov_deriv(x, y, p), z.at(p), p) +
                     ivp(q, y.at(p), lc.cov_deriv(x, z, p), p);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  CHECK(worst < 1e-8);
}
