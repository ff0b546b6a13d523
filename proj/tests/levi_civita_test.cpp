#include <cmath>

#include "ashgeo/error.hpp"
#include "ashgeo/levi_civita.hpp"
#include "ashgeo/sampling.hpp"
#include "ashgeo/vecprod.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ashgeo;
using ashgeo::testing::central_difference;

namespace {

SliceMetric round_s3() {
  const Expr s1 = sin(coord(0));
  const Expr s2 = sin(coord(1));
  return SliceMetric::diagonal(1.0, s1 * s1, s1 * s1 * s2 * s2);
}

Chart round_s3_chart() { return Chart::slice({{{0.3, 2.8}, {0.3, 2.8}, {-3.0, 3.0}}}); }

// Christoffel symbols from finite differences of the metric components.
double fd_christoffel(const SliceMetric& q, int c, int a, int b, const Binding& p) {
  const Mat3 qinv = q.at(p).inverse();
  auto dq = [&](int d, int i, int j) { return central_difference(q(i, j), p, coord_id(d)); };
  double s = 0.0;
  for (int d = 0; d < 3; ++d) s += qinv(c, d) * (dq(a, d, b) + dq(b, d, a) - dq(d, a, b));
  return 0.5 * s;
}

}  // namespace

TEST_CASE("flat metric has vanishing connection and curvature") {
  const LeviCivita lc(SliceMetric::flat());
  const Binding p{{"x1", 0.2}, {"x2", -0.4}, {"x3", 0.9}};
  const auto g = lc.christoffel(p);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(g(c, a, b) == 0.0);

  CHECK(lc.cov_deriv(Vec3(1, 2, 3), VecField::constant(Vec3(4, 5, 6)), p).norm() == 0.0);
  const VecField y{{coord(1), Expr(0.0), Expr(0.0)}};
  CHECK((lc.cov_deriv(Vec3::Unit(1), y, p) - Vec3::Unit(0)).norm() == 0.0);
  const auto r = lc.riemann_components(p);
  for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("round S3 Christoffel symbol") {
  const SliceMetric q = round_s3();
  const Binding p{{"x1", 0.7}, {"x2", 1.1}, {"x3", 0.4}};
  const auto g = christoffel(q, p);
  CHECK(std::abs(g(0, 1, 1) - (-std::sin(0.7) * std::cos(0.7))) < 1e-10);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(std::abs(g(c, a, b) - fd_christoffel(q, c, a, b, p)) < 1e-8);
}

TEST_CASE("Christoffel symbols agree with finite differences on random metrics") {
  SplitMix64 rng(41);
  const Chart chart = random_field_chart();
  for (int n = 0; n < 5; ++n) {
    const SliceMetric q = random_metric(rng);
    const Binding p = chart.sample(rng);
    const auto g = christoffel(q, p);
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          CHECK(g(c, a, b) == g(c, b, a));
          CHECK(std::abs(g(c, a, b) - fd_christoffel(q, c, a, b, p)) < 1e-6);
        }
  }
}

TEST_CASE("metric compatibility") {
  SplitMix64 rng(43);
  const Chart chart = random_field_chart();
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const SliceMetric q = random_metric(rng);
    const Binding p = chart.sample(rng);
    const auto g = christoffel(q, p);
    const Mat3 qp = q.at(p);
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          double rhs = 0.0;
          for (int d = 0; d < 3; ++d) rhs += g(d, c, a) * qp(d, b) + g(d, c, b) * qp(a, d);
          worst = std::max(worst, std::abs(eval(diff(q(a, b), coord_id(c)), p) - rhs));
        }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("metricity along vector fields") {
  SplitMix64 rng(47);
  const SliceMetric q = random_metric(rng);
  const LeviCivita lc(q);
  const VecField y = random_vector_field(rng);
  const VecField z = random_vector_field(rng);
  const Expr yz = bilinear(q.components(), y.c, z.c);
  const Chart chart = random_field_chart();
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const Binding p = chart.sample(rng);
    const Vec3 x = random_vector(rng);
    double lhs = 0.0;
    for (int a = 0; a < 3; ++a) lhs += x(a) * central_difference(yz, p, coord_id(a), 1e-5);
    const Mat3 qp = q.at(p);
    const double rhs = inner<double>(qp, lc.cov_deriv(x, y, p), z.at(p)) +
                       inner<double>(qp, y.at(p), lc.cov_deriv(x, z, p));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  // lhs is a finite difference; its truncation error dominates.
  CHECK(worst < 1e-7);
}

TEST_CASE("metricity along vector fields, exact derivative") {
  SplitMix64 rng(48);
  const SliceMetric q = random_metric(rng);
  const LeviCivita lc(q);
  const VecField y = random_vector_field(rng);
  const VecField z = random_vector_field(rng);
  const Expr yz = bilinear(q.components(), y.c, z.c);
  const Chart chart = random_field_chart();
  for (int n = 0; n < 50; ++n) {
    const Binding p = chart.sample(rng);
    const Vec3 x = random_vector(rng);
    const double lhs = eval(VecField::constant(x).derivative_of(yz), p);
    const Mat3 qp = q.at(p);
    const double rhs = inner<double>(qp, lc.cov_deriv(x, y, p), z.at(p)) +
                       inner<double>(qp, y.at(p), lc.cov_deriv(x, z, p));
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("torsion-freeness") {
  SplitMix64 rng(53);
  const SliceMetric q = random_metric(rng);
  const LeviCivita lc(q);
  const VecField x = random_vector_field(rng);
  const VecField y = random_vector_field(rng);
  const VecField torsion = lc.cov_deriv_field(x, y) - lc.cov_deriv_field(y, x) - lie_bracket(x, y);
  const Chart chart = random_field_chart();
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) worst = std::max(worst, torsion.at(chart.sample(rng)).norm());
  CHECK(worst < 1e-9);
}

TEST_CASE("curvature operator matches the commutator of covariant derivatives") {
  SplitMix64 rng(59);
  const SliceMetric q = random_metric(rng);
  const LeviCivita lc(q);
  const VecField x = random_vector_field(rng);
  const VecField y = random_vector_field(rng);
  const VecField z = random_vector_field(rng);
  const VecField lhs = lc.cov_deriv_field(x, lc.cov_deriv_field(y, z)) -
                       lc.cov_deriv_field(y, lc.cov_deriv_field(x, z)) -
                       lc.cov_deriv_field(lie_bracket(x, y), z);
  const Chart chart = random_field_chart();
  for (int n = 0; n < 10; ++n) {
    const Binding p = chart.sample(rng);
    const Vec3 r = riemann(q, x.at(p), y.at(p), z, p);
    CHECK((lhs.at(p) - r).norm() < 1e-8 * (1.0 + r.norm()));
  }
}

TEST_CASE("Riemann antisymmetries") {
  SplitMix64 rng(61);
  const Chart chart = random_field_chart();
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const SliceMetric q = random_metric(rng);
    const LeviCivita lc(q);
    const Binding p = chart.sample(rng);
    const Vec3 x = random_vector(rng), y = random_vector(rng);
    const Vec3 z = random_vector(rng), w = random_vector(rng);
    const Mat3 qp = q.at(p);
    worst = std::max(worst, (lc.riemann(x, y, z, p) + lc.riemann(y, x, z, p)).norm());
    worst = std::max(worst, std::abs(inner<double>(qp, lc.riemann(x, y, z, p), w) +
                                     inner<double>(qp, lc.riemann(x, y, w, p), z)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("round S3 has constant curvature one") {
  const SliceMetric q = round_s3();
  const LeviCivita lc(q);
  const Chart chart = round_s3_chart();
  SplitMix64 rng(67);
  double worst = 0.0;
  double worst_ivp = 0.0;
  for (int n = 0; n < 50; ++n) {
    const Binding p = chart.sample(rng);
    const Mat3 qp = q.at(p);
    const Vec3 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
    const Vec3 r = lc.riemann(x, y, z, p);
    const Vec3 expected = inner<double>(qp, z, y) * x - inner<double>(qp, z, x) * y;
    worst = std::max(worst, (r - expected).norm());
    worst_ivp = std::max(worst_ivp, (r - ivp<double>(qp, z, ivp<double>(qp, x, y))).norm());
  }
  CHECK(worst < 1e-8);
  CHECK(worst_ivp < 1e-8);
}

TEST_CASE("degenerate metric is rejected") {
  const SliceMetric q = SliceMetric::diagonal(1.0, coord(0), 1.0);
  CHECK_THROWS_AS(christoffel(q, Binding{{"x1", -0.5}, {"x2", 0.0}, {"x3", 0.0}}), GeometryError);
}
