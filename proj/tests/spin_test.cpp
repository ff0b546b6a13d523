#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "ashgeo/error.hpp"
#include "ashgeo/frw.hpp"
#include "ashgeo/sampling.hpp"
#include "ashgeo/spin.hpp"
#include "doctest.h"

using namespace ashgeo;

namespace {

const Complex I(0.0, 1.0);

CVec3 random_cvec(SplitMix64& rng, bool complex) {
  CVec3 c = random_vector(rng).cast<Complex>();
  if (complex) c += I * random_vector(rng).cast<Complex>();
  return c;
}

Mat2c random_su2(SplitMix64& rng) { return exp_su2(random_vector(rng, 3.0).cast<Complex>()); }

LocalLieForm random_constant_form(SplitMix64& rng) {
  LocalLieForm f;
  for (auto& m : f.a) m = So3Basis::combine(CVec3(random_vector(rng).cast<Complex>()));
  return f;
}

}  // namespace

TEST_CASE("su(2) basis brackets") {
  for (int i = 0; i < 3; ++i) {
    CHECK((Su2Basis::tau(i).adjoint() + Su2Basis::tau(i)).norm() == 0.0);
    CHECK(Su2Basis::tau(i).trace() == Complex(0.0));
    for (int j = 0; j < 3; ++j) {
      const Mat2c bracket =
          Su2Basis::tau(i) * Su2Basis::tau(j) - Su2Basis::tau(j) * Su2Basis::tau(i);
      Mat2c expected = Mat2c::Zero();
      for (int k = 0; k < 3; ++k) expected += Complex(levi_civita_symbol(i, j, k)) * Su2Basis::tau(k);
      CHECK((bracket - expected).norm() == 0.0);
    }
  }
}

TEST_CASE("lambda_star") {
  CHECK((lambda_star(Su2Basis::tau(2)) - So3Basis::M(2).cast<Complex>()).norm() == 0.0);
  CHECK(lambda_star(Mat2c::Zero()).norm() == 0.0);
  CHECK_THROWS_AS(lambda_star(Mat2c::Identity()), InvalidArgument);
  CHECK_THROWS_AS(lambda_star_inverse(CMat3::Identity()), InvalidArgument);

  SplitMix64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const Mat2c xi = Su2Basis::combine(random_cvec(rng, n % 2 == 1));
    const Mat2c eta = Su2Basis::combine(random_cvec(rng, n % 2 == 1));
    const CMat3 lhs = lambda_star(xi) * lambda_star(eta) - lambda_star(eta) * lambda_star(xi);
    CHECK((lhs - lambda_star(xi * eta - eta * xi)).norm() < 1e-12);
    CHECK((lambda_star_inverse(lambda_star(xi)) - xi).norm() < 1e-14);
  }
}

TEST_CASE("lift_connection") {
  const LocalLieForm zero;
  for (const auto& m : lift_connection(zero).a) CHECK(m.norm() == 0.0);

  SplitMix64 rng(5);
  for (int n = 0; n < 20; ++n) {
    LocalLieForm f;
    std::array<CVec3, 3> comps;
    for (int a = 0; a < 3; ++a) {
      comps[a] = random_cvec(rng, true);
      f.a[a] = So3Basis::combine(comps[a]);
    }
    const SpinForm lifted = lift_connection(f);
    const LocalLieForm back = lower_connection(lifted);
    for (int a = 0; a < 3; ++a) {
      CHECK((Su2Basis::components(lifted.a[a]) - comps[a]).norm() < 1e-14);
      CHECK((back.a[a] - f.a[a]).norm() < 1e-12);
    }
  }
}

TEST_CASE("closed-form exponentials agree with the matrix exponential") {
  SplitMix64 rng(7);
  for (int n = 0; n < 40; ++n) {
    const CVec3 c = random_cvec(rng, n % 2 == 1) * (n < 5 ? 1e-5 : 1.5);
    const CMat3 x = So3Basis::combine(c);
    const CMat3 e3 = x.exp();
    CHECK((exp_so3(c) - e3).norm() < 1e-12 * (1.0 + e3.norm()));
    const Mat2c y = Su2Basis::combine(c);
    const Mat2c e2 = y.exp();
    CHECK((exp_su2(c) - e2).norm() < 1e-12 * (1.0 + e2.norm()));
  }
  CHECK((exp_su2(CVec3::Zero()) - Mat2c::Identity()).norm() == 0.0);
  // A full turn in SU(2) is -1.
  CHECK((exp_su2(CVec3(0, 0, 2.0 * std::numbers::pi)) + Mat2c::Identity()).norm() < 1e-14);
}

TEST_CASE("covering map") {
  CHECK((covering_map(Mat2c::Identity()) - Mat3::Identity()).norm() == 0.0);
  CHECK((covering_map(-Mat2c::Identity()) - Mat3::Identity()).norm() == 0.0);
  CHECK_THROWS_AS(covering_map(2.0 * Mat2c::Identity()), InvalidArgument);

  for (double theta : {0.3, std::numbers::pi, 2.0 * std::numbers::pi}) {
    const Mat2c u = exp_su2(CVec3(0, 0, theta));
    const Mat3 expected = (theta * So3Basis::M(2)).exp();
    CHECK((covering_map(u) - expected).norm() < 1e-12);
  }

  SplitMix64 rng(11);
  for (int n = 0; n < 50; ++n) {
    const Mat2c u = random_su2(rng);
    const Mat2c v = random_su2(rng);
    const Mat3 lu = covering_map(u);
    CHECK((lu.transpose() * lu - Mat3::Identity()).norm() < 1e-8);
    CHECK(std::abs(lu.determinant() - 1.0) < 1e-8);
    CHECK((covering_map(-u) - lu).norm() == 0.0);
    CHECK((covering_map(u * v) - lu * covering_map(v)).norm() < 1e-10);

    const CVec3 xi = random_cvec(rng, false);
    const double t = rng.uniform();
    CHECK((covering_map(exp_su2(t * xi)) - exp_so3(CVec3(t * xi)).real()).norm() < 1e-8);

    const CVec3 zeta = random_cvec(rng, true);
    CHECK((covering_map_complex(exp_su2(zeta)) - exp_so3(zeta)).norm() <
          1e-8 * (1.0 + exp_so3(zeta).norm()));
  }
}

TEST_CASE("holonomy basics") {
  const HolonomyDomain domain{Chart::slice({{{-2, 2}, {-2, 2}, {-2, 2}}}), {}};
  const PathSpec seg = PathSpec::segment(Vec3(-1, 0, 0), Vec3(1, 0.5, 0), 50);

  CHECK((holonomy_so3(constant_form({}), seg, domain) - CMat3::Identity()).norm() == 0.0);

  // A(c') = theta M_3 along a unit segment in direction 1.
  const double theta = 0.9;
  LocalLieForm f;
  f.a[0] = theta * So3Basis::M(2).cast<Complex>();
  const PathSpec unit = PathSpec::segment(Vec3(0, 0, 0), Vec3(1, 0, 0), 100);
  const CMat3 h = holonomy_so3(constant_form(f), unit, domain);
  CHECK((h - (-theta * So3Basis::M(2)).exp().cast<Complex>()).norm() < 1e-8);

  CHECK_THROWS_AS(holonomy_so3(constant_form(f), PathSpec::segment(Vec3::Zero(), Vec3::Ones(), 9), domain),
                  InvalidArgument);
  CHECK_THROWS_AS(holonomy_so3(constant_form(f), PathSpec::segment(Vec3::Zero(), Vec3(3, 0, 0)), domain),
                  GeometryError);
}

TEST_CASE("holonomy reversal and double cover on random forms") {
  SplitMix64 rng(13);
  const HolonomyDomain domain{Chart::slice({{{-2, 2}, {-2, 2}, {-2, 2}}}), {}};
  for (int n = 0; n < 10; ++n) {
    std::array<std::array<Expr, 3>, 3> comps;
    for (auto& row : comps) {
      for (auto& e : row) e = Expr(rng.uniform(-1, 1)) * sin(Expr(rng.uniform(-1, 1)) + coord(static_cast<int>(rng.below(3))));
    }
    const LieFormField form = component_form(comps);
    const PathSpec path = PathSpec::parse({"0.5*sin(3*s)", "s - 0.5", "0.3*cos(2*s)*s"}, 400);
    const CMat3 h = holonomy_so3(form, path, domain);
    CHECK((h.transpose() * h - CMat3::Identity()).norm() < 1e-6);
    CHECK((h * holonomy_so3(form, path.reversed(), domain) - CMat3::Identity()).norm() < 1e-7);
    const Mat2c u = holonomy_su2(form, path, domain);
    CHECK((covering_map(u).cast<Complex>() - h).norm() < 1e-6);
  }
}

TEST_CASE("holonomy of the FRW Ashtekar connection") {
  const FrwModel m = make_frw(1, parse("exp(0.5*(t - 1))"));
  const double t0 = 1.0;
  const HolonomyDomain domain{m.split.chart(), Binding{}.set("t", t0)};
  const PathSpec loop = PathSpec::parse({"1.2 + 0.3*cos(6.283185307179586*s)",
                                         "1.5 + 0.3*sin(6.283185307179586*s)", "0.5*s"},
                                        300);
  for (Complex beta : {Complex(0.2374), I}) {
    const AshtekarConnection conn = frw_connection(m, Beta(beta), t0);
    const LocalFormField field(conn, orthonormal_frame_field(frw_slice_metric(m, t0)));
    const LieFormField form = ashtekar_form(field);
    const CMat3 h = holonomy_so3(form, loop, domain);
    const Mat2c u = holonomy_su2(form, loop, domain);
    CHECK((covering_map_complex(u) - h).norm() < 1e-6);
    if (beta.imag() == 0.0) {
      CHECK((h.transpose() * h - CMat3::Identity()).norm() < 1e-6);
      CHECK((covering_map(u).cast<Complex>() - h).norm() < 1e-6);
    }
  }
}
