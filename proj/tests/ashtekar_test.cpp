#include <cmath>

#include "ashgeo/ashtekar.hpp"
#include "ashgeo/error.hpp"
#include "ashgeo/hypersurface.hpp"
#include "ashgeo/sampling.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ashgeo;
using ashgeo::testing::central_difference;

namespace {

const Complex I(0.0, 1.0);
const std::array<Complex, 3> kBetas{Complex(1.0), Complex(0.2374), I};

CVec3 c(const Vec3& v) { return v.cast<Complex>(); }

Complex cinner(const Mat3& q, const CVec3& x, const CVec3& y) { return inner<Complex>(q, x, y); }

struct RandomSetup {
  SliceMetric q;
  EndoField w;
};

RandomSetup random_setup(SplitMix64& rng) {
  SliceMetric q = random_metric(rng);
  EndoField w = random_symmetric_weingarten(rng, q);
  return {q, w};
}

}  // namespace

TEST_CASE("beta must be nonzero") {
  CHECK_THROWS_AS(Beta(0.0), InvalidArgument);
  CHECK_THROWS_AS(Beta(Complex(0.0, 0.0)), InvalidArgument);
  CHECK(Beta(I).value() == I);
  CHECK_FALSE(Beta(I).is_real());
}

TEST_CASE("so(3) basis") {
  for (int i = 0; i < 3; ++i) {
    CHECK((So3Basis::M(i) + So3Basis::M(i).transpose()).norm() == 0.0);
    const Vec3 v(0.3, -1.2, 2.0);
    CHECK((So3Basis::M(i) * v - Vec3::Unit(i).cross(v)).norm() < 1e-15);
    for (int j = 0; j < 3; ++j) {
      const Mat3 bracket = So3Basis::M(i) * So3Basis::M(j) - So3Basis::M(j) * So3Basis::M(i);
      Mat3 expected = Mat3::Zero();
      for (int k = 0; k < 3; ++k) expected += levi_civita_symbol(i, j, k) * So3Basis::M(k);
      CHECK((bracket - expected).norm() == 0.0);
    }
  }
  const CVec3 comps(Complex(1, 2), Complex(-0.5, 0), Complex(0, 3));
  CHECK((So3Basis::components(So3Basis::combine(comps)) - comps).norm() == 0.0);
}

TEST_CASE("W = 0 reduces to the Levi-Civita connection") {
  SplitMix64 rng(31);
  const SliceMetric q = random_metric(rng);
  const AshtekarConnection conn(Beta(I), q, EndoField::zero());
  const VecField y = random_vector_field(rng);
  const Chart chart = random_field_chart();
  for (int n = 0; n < 10; ++n) {
    const Binding p = chart.sample(rng);
    const Vec3 x = random_vector(rng);
    CHECK((conn.deriv(x, y, p) - c(conn.levi_civita().cov_deriv(x, y, p))).norm() == 0.0);
  }
}

TEST_CASE("metricity and Leibniz rule of the Ashtekar connection") {
  SplitMix64 rng(37);
  const Chart chart = random_field_chart();
  for (Complex beta : kBetas) {
    const auto [q, w] = random_setup(rng);
    const AshtekarConnection conn(Beta(beta), q, w);
    const VecField y = random_vector_field(rng);
    const VecField z = random_vector_field(rng);
    const Expr yz = bilinear(q.components(), y.c, z.c);
    const VecField yxz = conn.product()(y, z);
    double metric_err = 0.0;
    double leibniz_err = 0.0;
    for (int n = 0; n < 30; ++n) {
      const Binding p = chart.sample(rng);
      const Vec3 x = random_vector(rng);
      const Mat3 qp = q.at(p);
      const Complex lhs = eval(VecField::constant(x).derivative_of(yz), p);
      const CVec3 dy = conn.deriv(x, y, p);
      const CVec3 dz = conn.deriv(x, z, p);
      const Complex rhs = cinner(qp, dy, c(z.at(p))) + cinner(qp, c(y.at(p)), dz);
      metric_err = std::max(metric_err, std::abs(lhs - rhs));

      const CVec3 l = conn.deriv(x, yxz, p);
      const CVec3 r = ivp<Complex>(qp, dy, c(z.at(p))) + ivp<Complex>(qp, c(y.at(p)), dz);
      leibniz_err = std::max(leibniz_err, (l - r).norm());
    }
    CHECK(metric_err < 1e-9);
    CHECK(leibniz_err < 1e-8);
  }
}

TEST_CASE("torsion and curvature: definition against closed form") {
  SplitMix64 rng(41);
  const Chart chart = random_field_chart();
  for (Complex beta : kBetas) {
    const auto [q, w] = random_setup(rng);
    const AshtekarConnection conn(Beta(beta), q, w);
    const VecField x = random_vector_field(rng);
    const VecField y = random_vector_field(rng);
    const VecField z = random_vector_field(rng);
    const VecField v = random_vector_field(rng);
    for (int n = 0; n < 8; ++n) {
      const Binding p = chart.sample(rng);
      const CVec3 t = conn.torsion(x, y, p);
      CHECK((t - conn.torsion_closed(x.at(p), y.at(p), p)).norm() < 1e-9);

      const CVec3 r = conn.curvature(x, y, z, p);
      const CVec3 rc = conn.curvature_closed(x, y, z, p);
      CHECK((r - rc).norm() < 1e-8);
      CHECK((r + conn.curvature_closed(y, x, z, p)).norm() < 1e-8);

      const Mat3 qp = q.at(p);
      const Complex s1 = cinner(qp, rc, c(v.at(p)));
      const Complex s2 = cinner(qp, conn.curvature_closed(x, y, v, p), c(z.at(p)));
      CHECK(std::abs(s1 + s2) < 1e-8);
    }
  }
}

TEST_CASE("torsion and curvature vanish for the flat metric with W = 0") {
  const AshtekarConnection conn(Beta(1.0), SliceMetric::flat(), EndoField::zero());
  SplitMix64 rng(43);
  const VecField x = random_vector_field(rng);
  const VecField y = random_vector_field(rng);
  const VecField z = random_vector_field(rng);
  const Binding p{{"x1", 0.1}, {"x2", 0.2}, {"x3", -0.3}};
  CHECK(conn.torsion(x, y, p).norm() < 1e-12);
  CHECK(conn.curvature(x, y, z, p).norm() < 1e-12);
}

TEST_CASE("reconstruct_W") {
  SplitMix64 rng(47);
  const Mat3 q0 = random_spd(rng);
  CHECK(reconstruct_W(Beta(1.0), q0, [](const Vec3&, const Vec3&) { return CVec3(CVec3::Zero()); })
            .norm() == 0.0);
  for (Complex beta : kBetas) {
    for (int n = 0; n < 20; ++n) {
      const Mat3 q = random_spd(rng);
      Mat3 k = Mat3::Random();
      k = 0.5 * (k + k.transpose());
      const Mat3 w = q.inverse() * k;
      const BilinearMap b = [&](const Vec3& x, const Vec3& y) {
        return CVec3(beta * ivp<double>(q, w * x, y).cast<Complex>());
      };
      CHECK((reconstruct_W(Beta(beta), q, b) - w.cast<Complex>()).norm() < 1e-9);
    }
  }
}

TEST_CASE("local form: antisymmetry, decomposition and physics components") {
  SplitMix64 rng(53);
  const Chart chart = random_field_chart();
  for (Complex beta : kBetas) {
    const auto [q, w] = random_setup(rng);
    const AshtekarConnection conn(Beta(beta), q, w);
    const LocalFormField form(conn, orthonormal_frame_field(q));
    for (int n = 0; n < 10; ++n) {
      const Binding p = chart.sample(rng);
      const LocalLieForm A = form.at(p);
      const auto [gamma, k] = form.parts(p);
      const PhysicsComponents pc = form.physics_components(p);
      for (int a = 0; a < 3; ++a) {
        CHECK(So3Basis::antisymmetry_residual(A.a[a]) < 1e-10);
        CHECK((A.a[a] - gamma[a].cast<Complex>() - beta * k[a].cast<Complex>()).norm() < 1e-12);
        const CVec3 comps = pc.A.row(a).transpose();
        CHECK((So3Basis::combine(comps) - A.a[a]).norm() < 1e-9);
        CHECK((So3Basis::combine(Vec3(pc.gamma.row(a).transpose())) - gamma[a]).norm() < 1e-9);
        CHECK((So3Basis::combine(Vec3(pc.k.row(a).transpose())) - k[a]).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("local form of the flat metric in the identity frame vanishes") {
  const AshtekarConnection conn(Beta(1.0), SliceMetric::flat(), EndoField::zero());
  const LocalFormField form(conn, orthonormal_frame_field(SliceMetric::flat()));
  const Binding p{{"x1", 0.4}, {"x2", 0.1}, {"x3", 0.0}};
  for (const auto& m : form.at(p).a) CHECK(m.norm() == 0.0);
  const PhysicsComponents pc = form.physics_components(p);
  CHECK(pc.gamma.norm() == 0.0);
  CHECK(pc.k.norm() == 0.0);
}

TEST_CASE("local form rejects a non-orthonormal frame") {
  const AshtekarConnection conn(Beta(1.0), SliceMetric::flat(), EndoField::zero());
  FrameField e;
  for (int i = 0; i < 3; ++i) e.m[i][i] = Expr(2.0);
  CHECK_THROWS_AS(local_form(conn, e, Binding{{"x1", 0}, {"x2", 0}, {"x3", 0}}), GeometryError);
}

TEST_CASE("constant frame rotation conjugates the local form") {
  SplitMix64 rng(59);
  const auto [q, w] = random_setup(rng);
  const AshtekarConnection conn(Beta(Complex(0.3, 0.7)), q, w);
  const FrameField e = orthonormal_frame_field(q);
  const Mat3 R = random_rotation(rng);
  FrameField er;
  for (int a = 0; a < 3; ++a) {
    for (int j = 0; j < 3; ++j) {
      Expr s;
      for (int i = 0; i < 3; ++i) s += e.m[a][i] * Expr(R(i, j));
      er.m[a][j] = s;
    }
  }
  const Chart chart = random_field_chart();
  for (int n = 0; n < 10; ++n) {
    const Binding p = chart.sample(rng);
    const LocalLieForm A = local_form(conn, e, p);
    const LocalLieForm B = local_form(conn, er, p);
    const CMat3 Rc = R.cast<Complex>();
    for (int a = 0; a < 3; ++a) CHECK((B.a[a] - Rc.transpose() * A.a[a] * Rc).norm() < 1e-10);
  }
}

TEST_CASE("reconstruction of q and K from the densitized triad and the connection") {
  SplitMix64 rng(61);
  const SpacetimeSplit st = random_split(rng);
  const double t0 = 0.3;
  const SliceMetric q = induce_slice_metric(st, t0);
  const EndoField w = weingarten_field(st, t0);
  const Complex beta(0.2374, 0.0);
  const AshtekarConnection conn(Beta(beta), q, w);

  // Only E and nabla^A are handed over.
  const DensitizedTriadField E = densitize(orthonormal_frame_field(q));
  const SliceMetric q_rec = metric_from_frame(reconstruct_frame(E));
  const LeviCivita lc_rec(q_rec);

  const Chart chart = random_field_chart();
  for (int n = 0; n < 10; ++n) {
    Binding p = chart.sample(rng);
    p.set("t", t0);
    const Mat3 qp = q_rec.at(p);
    CHECK((qp - q.at(p)).cwiseAbs().maxCoeff() < 1e-10);
    const BilinearMap b = [&](const Vec3& x, const Vec3& y) {
      const VecField yf = VecField::constant(y);
      return CVec3(conn.deriv(x, yf, p) - lc_rec.cov_deriv(x, yf, p).cast<Complex>());
    };
    const CMat3 w_rec = reconstruct_W(Beta(beta), qp, b);
    const CMat3 K_rec = (qp.cast<Complex>() * w_rec).transpose();
    CHECK((K_rec - second_fundamental_form_split(st, p).cast<Complex>()).norm() < 1e-8);
  }
}
