#include <cmath>

#include "ashgeo/error.hpp"
#include "ashgeo/frw.hpp"
#include "ashgeo/sampling.hpp"
#include "doctest.h"

using namespace ashgeo;

namespace {

const Complex I(0.0, 1.0);

Binding slice_point(const FrwModel& m, SplitMix64& rng, double t0) {
  return m.split.chart().sample_slice(rng, t0);
}

}  // namespace

TEST_CASE("make_frw validation") {
  CHECK_THROWS_AS(make_frw(2, Expr(1.0)), InvalidArgument);
  CHECK_THROWS_AS(make_frw(0, parse("t")), InvalidArgument);
  CHECK_THROWS_AS(make_frw(0, parse("1 + x1")), InvalidArgument);
  const FrwModel flat = make_frw(0, Expr(1.0));
  CHECK((flat.reference.at(Binding{{"x1", 0.3}, {"x2", 0}, {"x3", 0}}) - Mat3::Identity()).norm() == 0.0);
}

TEST_CASE("hubble rate") {
  CHECK(hubble(make_frw(0, parse("exp(0.5*t)")), 0.7) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hubble(make_frw(0, Expr(3.0)), 0.1) == 0.0);
  CHECK(hubble(make_frw(0, parse("t^2"), {1.0, 3.0}), 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  const FrwModel m = make_frw(1, parse("exp(1.5*t)"));
  for (double t : {-1.0, 0.0, 1.3}) CHECK(std::abs(hubble(m, t) - 1.5) < 1e-14);
  CHECK_THROWS_AS(hubble(m, 5.0), GeometryError);
}

TEST_CASE("reference metrics have constant curvature kappa") {
  SplitMix64 rng(71);
  for (int kappa : {-1, 1}) {
    const FrwModel m = make_frw(kappa, Expr(1.0));
    const LeviCivita lc(m.reference);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
      const Binding p = slice_point(m, rng, 0.0);
      const Mat3 q = m.reference.at(p);
      const Vec3 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
      const Vec3 expected = kappa * (inner<double>(q, z, y) * x - inner<double>(q, z, x) * y);
      worst = std::max(worst, (lc.riemann(x, y, z, p) - expected).norm());
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("Weingarten map of FRW is h Id") {
  SplitMix64 rng(73);
  for (int kappa : {-1, 0, 1}) {
    const FrwModel m = make_frw(kappa, parse("1 + 0.1*t^2"));
    const SpacetimeConnection conn(m.split);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const Binding p = m.split.chart().sample(rng);
      const double h = hubble(m, p.get("t"));
      const Vec3 x = random_vector(rng);
      worst = std::max(worst, (conn.weingarten(x, p) - h * x).norm());
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("Koszul identity 2<W(X),Y> = d/dt [a^2 q(X, Y)]") {
  SplitMix64 rng(79);
  const FrwModel m = make_frw(1, parse("exp(0.3*t) + 0.2*sin(t)"));
  const EndoField w = weingarten_field(m.split);
  for (int n = 0; n < 30; ++n) {
    const Binding p = m.split.chart().sample(rng);
    const Mat3 g = m.split.spatial_metric().at(p);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double lhs = 2.0 * (w.at(p).col(a)).dot(g.col(b));
        const double rhs = eval(diff(m.split.spatial_metric()(a, b), "t"), p);
        CHECK(std::abs(lhs - rhs) < 1e-9);
      }
    }
  }
}

TEST_CASE("oracle closed forms") {
  SplitMix64 rng(83);
  const Vec3 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);

  // Static: W = 0, T = 0, R = -kappa (X . Y) . Z.
  const FrwModel st = make_frw(1, Expr(1.0));
  const Binding p = slice_point(st, rng, 0.0);
  const FrwOracles o = frw_oracles(st, Beta(1.0), 0.0, x, y, z, p);
  const Mat3 q = st.reference.at(p);
  CHECK(o.W.norm() == 0.0);
  CHECK(o.T.norm() == 0.0);
  CHECK((o.R + ivp<double>(q, ivp<double>(q, x, y), z).cast<Complex>()).norm() < 1e-14);

  // kappa = 0, a = exp(H t): T = 2 beta H X . Y.
  const FrwModel ex = make_frw(0, parse("exp(0.4*t)"));
  const Binding p0 = slice_point(ex, rng, 0.0);
  const FrwOracles o2 = frw_oracles(ex, Beta(0.5), 0.0, x, y, z, p0);
  CHECK((o2.T - (2.0 * 0.5 * 0.4 * x.cross(y)).cast<Complex>()).norm() < 1e-14);
}

TEST_CASE("Ashtekar torsion and curvature on FRW slices with a(t0) = 1") {
  SplitMix64 rng(89);
  const double t0 = 1.0;
  for (int kappa : {-1, 0, 1}) {
    for (const char* a : {"exp(0.5*(t - 1))", "(1 + 0.1*t^2)/1.1"}) {
      const FrwModel m = make_frw(kappa, parse(a));
      for (Complex beta : {Complex(1.0), Complex(0.2374), I}) {
        const AshtekarConnection conn = frw_connection(m, Beta(beta), t0);
        for (int n = 0; n < 4; ++n) {
          const Binding p = slice_point(m, rng, t0);
          const VecField X = VecField::constant(random_vector(rng));
          const VecField Y = VecField::constant(random_vector(rng));
          const VecField Z = random_vector_field(rng);
          const FrwOracles o = frw_oracles(m, Beta(beta), t0, X.at(p), Y.at(p), Z.at(p), p);
          CHECK((conn.weingarten().at(p) - o.W).norm() < 1e-9);
          CHECK((conn.torsion(X, Y, p) - o.T).norm() < 1e-9);
          CHECK((conn.curvature(X, Y, Z, p) - o.R).norm() < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("curvature entering the FRW curvature form is that of a(t0)^2 q") {
  // With a(t0) = 2 the induced metric has curvature kappa / 4.
  SplitMix64 rng(97);
  const double t0 = 0.5;
  const FrwModel m = make_frw(1, parse("2*exp(0.3*(t - 0.5))"));
  const AshtekarConnection conn = frw_connection(m, Beta(0.7), t0);
  for (int n = 0; n < 5; ++n) {
    const Binding p = slice_point(m, rng, t0);
    const VecField X = VecField::constant(random_vector(rng));
    const VecField Y = VecField::constant(random_vector(rng));
    const VecField Z = VecField::constant(random_vector(rng));
    const FrwOracles o = frw_oracles(m, Beta(0.7), t0, X.at(p), Y.at(p), Z.at(p), p);
    const CVec3 r = conn.curvature(X, Y, Z, p);
    CHECK((r - o.R).norm() < 1e-8);
    // The unscaled kappa does not fit.
    const Mat3 q = frw_slice_metric(m, t0).at(p);
    const double h = 0.3;
    const CVec3 wrong = (0.49 * h * h - 1.0) *
                        ivp<double>(q, ivp<double>(q, X.at(p), Y.at(p)), Z.at(p)).cast<Complex>();
    CHECK((r - wrong).norm() > 1e-3);
  }
}

TEST_CASE("physics components on the flat FRW slice") {
  const FrwModel m = make_frw(0, parse("exp(0.5*(t - 1))"));
  const double t0 = 1.0;
  const Complex beta(0.2374);
  const AshtekarConnection conn = frw_connection(m, Beta(beta), t0);
  const LocalFormField form(conn, orthonormal_frame_field(frw_slice_metric(m, t0)));
  SplitMix64 rng(101);
  for (int n = 0; n < 10; ++n) {
    const Binding p = slice_point(m, rng, t0);
    const PhysicsComponents pc = form.physics_components(p);
    CHECK(pc.gamma.norm() < 1e-14);
    CHECK((pc.k - 0.5 * Mat3::Identity()).norm() < 1e-12);
    CHECK((pc.A - (beta * 0.5) * CMat3::Identity()).norm() < 1e-12);
    const LocalLieForm A = form.at(p);
    for (int a = 0; a < 3; ++a) {
      CHECK((So3Basis::combine(CVec3(pc.A.row(a).transpose())) - A.a[a]).norm() < 1e-9);
    }
  }
}
