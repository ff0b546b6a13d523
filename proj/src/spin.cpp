#include "ashgeo/spin.hpp"

#include <cmath>

#include "ashgeo/error.hpp"

namespace ashgeo {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kGroupTol = 1e-8;
constexpr double kSeriesCutoff = 1e-6;

const Complex kI(0.0, 1.0);

double scale(double norm) { return std::max(1.0, norm); }

}  // namespace

const Mat2c& Su2Basis::tau(int j) {
  static const std::array<Mat2c, 3> basis = [] {
    Mat2c s1, s2, s3;
    s1 << 0.0, 1.0, 1.0, 0.0;
    s2 << 0.0, -kI, kI, 0.0;
    s3 << 1.0, 0.0, 0.0, -1.0;
    return std::array<Mat2c, 3>{-0.5 * kI * s1, -0.5 * kI * s2, -0.5 * kI * s3};
  }();
  return basis.at(static_cast<std::size_t>(j));
}

Mat2c Su2Basis::combine(const CVec3& c) { return c(0) * tau(0) + c(1) * tau(1) + c(2) * tau(2); }

CVec3 Su2Basis::components(const Mat2c& xi) {
  CVec3 c;
  for (int j = 0; j < 3; ++j) c(j) = -2.0 * (tau(j) * xi).trace();
  return c;
}

CMat3 lambda_star(const Mat2c& xi) {
  const CVec3 c = Su2Basis::components(xi);
  if ((xi - Su2Basis::combine(c)).norm() > kAlgebraTol * scale(xi.norm())) {
    throw InvalidArgument("matrix is not in su(2)");
  }
  return So3Basis::combine(c);
}

Mat2c lambda_star_inverse(const CMat3& a) {
  if (So3Basis::antisymmetry_residual(a) > kAlgebraTol * scale(a.norm())) {
    throw InvalidArgument("matrix is not in so(3)");
  }
  return Su2Basis::combine(So3Basis::components(a));
}

SpinForm lift_connection(const LocalLieForm& form) {
  SpinForm out;
  for (int a = 0; a < 3; ++a) out.a[a] = lambda_star_inverse(form.a[a]);
  return out;
}

LocalLieForm lower_connection(const SpinForm& form) {
  LocalLieForm out;
  for (int a = 0; a < 3; ++a) out.a[a] = lambda_star(form.a[a]);
  return out;
}

CMat3 exp_so3(const CVec3& c) {
  const Complex t2 = c.transpose() * c;
  Complex f1, f2;
  if (std::abs(t2) < kSeriesCutoff) {
    f1 = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    f2 = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    const Complex t = std::sqrt(t2);
    f1 = std::sin(t) / t;
    f2 = (1.0 - std::cos(t)) / t2;
  }
  const CMat3 x = So3Basis::combine(c);
  return CMat3::Identity() + f1 * x + f2 * x * x;
}

Mat3 exp_so3(const Vec3& c) { return exp_so3(CVec3(c.cast<Complex>())).real(); }

Mat2c exp_su2(const CVec3& c) {
  const Complex s2 = c.transpose() * c;
  Complex cs, sc;
  if (std::abs(s2) < kSeriesCutoff) {
    cs = 1.0 - s2 / 8.0 + s2 * s2 / 384.0;
    sc = 1.0 - s2 / 24.0 + s2 * s2 / 1920.0;
  } else {
    const Complex half = 0.5 * std::sqrt(s2);
    cs = std::cos(half);
    sc = std::sin(half) / half;
  }
  return cs * Mat2c::Identity() + sc * Su2Basis::combine(c);
}

namespace {

CMat3 adjoint(const Mat2c& u, const Mat2c& u_inv) {
  CMat3 out;
  for (int i = 0; i < 3; ++i) {
    const Mat2c conj = u * Su2Basis::tau(i) * u_inv;
    for (int j = 0; j < 3; ++j) out(j, i) = -2.0 * (Su2Basis::tau(j) * conj).trace();
  }
  return out;
}

}  // namespace

Mat3 covering_map(const Mat2c& u) {
  if ((u.adjoint() * u - Mat2c::Identity()).norm() > kGroupTol ||
      std::abs(u.determinant() - 1.0) > kGroupTol) {
    throw InvalidArgument("matrix is not in SU(2)");
  }
  return adjoint(u, u.adjoint()).real();
}

CMat3 covering_map_complex(const Mat2c& u) {
  if (std::abs(u.determinant() - 1.0) > kGroupTol) throw InvalidArgument("matrix is not in SL(2,C)");
  return adjoint(u, u.inverse());
}

// ---------------------------------------------------------------------------
// Paths and holonomy
// ---------------------------------------------------------------------------

VarId path_parameter() {
  static const VarId id = intern("s");
  return id;
}

PathSpec PathSpec::segment(const Vec3& from, const Vec3& to, int steps) {
  const Expr s = Expr::var(path_parameter());
  PathSpec p;
  for (int a = 0; a < 3; ++a) p.c[a] = Expr(from(a)) + Expr(to(a) - from(a)) * s;
  p.steps = steps;
  return p;
}

PathSpec PathSpec::parse(const std::array<std::string, 3>& components, int steps) {
  static const std::vector<std::string> vars{"s"};
  PathSpec p;
  for (int a = 0; a < 3; ++a) p.c[a] = ashgeo::parse(components[a], vars);
  p.steps = steps;
  return p;
}

PathSpec PathSpec::reversed() const {
  const Expr flip = Expr(1.0) - Expr::var(path_parameter());
  PathSpec p = *this;
  for (auto& e : p.c) e = substitute(e, path_parameter(), flip);
  return p;
}

LieFormField constant_form(const LocalLieForm& form) {
  return [form](const Binding&) { return form; };
}

LieFormField component_form(const std::array<std::array<Expr, 3>, 3>& components) {
  std::array<Expr, 9> flat;
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) flat[3 * a + i] = components[a][i];
  }
  auto tape = std::make_shared<const Tape>(flat);
  return [tape](const Binding& p) {
    std::array<double, 9> v{};
    tape->eval(p, v);
    LocalLieForm out;
    for (int a = 0; a < 3; ++a) out.a[a] = So3Basis::combine(Vec3(v[3 * a], v[3 * a + 1], v[3 * a + 2])).cast<Complex>();
    return out;
  };
}

LieFormField ashtekar_form(const LocalFormField& field) {
  return [field](const Binding& p) { return field.at(p); };
}

namespace {

// Generator -A(c'(s)) at parameter s, in the representation chosen by `rep`.
template <typename MatT, typename Rep>
MatT holonomy(const LieFormField& form, const PathSpec& path, const HolonomyDomain& domain,
              Rep rep) {
  if (path.steps < 10) throw InvalidArgument("holonomy needs at least 10 steps");
  std::array<Expr, 6> outs;
  for (int a = 0; a < 3; ++a) {
    outs[a] = path.c[a];
    outs[3 + a] = diff(path.c[a], path_parameter());
  }
  const Tape tape(outs);

  auto generator = [&](double s) {
    Binding b;
    b.set(path_parameter(), s);
    std::array<double, 6> v{};
    tape.eval(b, v);
    Binding p = domain.fixed;
    for (int a = 0; a < 3; ++a) p.set(coord_id(a), v[a]);
    if (!domain.chart.contains(p)) {
      throw GeometryError("path leaves the chart at s = " + std::to_string(s));
    }
    const Vec3 velocity(v[3], v[4], v[5]);
    return MatT(-rep(form(p).along(velocity)));
  };

  MatT u = MatT::Identity();
  const double h = 1.0 / path.steps;
  for (int n = 0; n < path.steps; ++n) {
    const double s = n * h;
    const MatT g0 = generator(s);
    const MatT gm = generator(s + 0.5 * h);
    const MatT g1 = generator(s + h);
    const MatT k1 = g0 * u;
    const MatT k2 = gm * (u + 0.5 * h * k1);
    const MatT k3 = gm * (u + 0.5 * h * k2);
    const MatT k4 = g1 * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

}  // namespace

CMat3 holonomy_so3(const LieFormField& form, const PathSpec& path, const HolonomyDomain& domain) {
  return holonomy<CMat3>(form, path, domain, [](const CMat3& a) { return a; });
}

Mat2c holonomy_su2(const LieFormField& form, const PathSpec& path, const HolonomyDomain& domain) {
  return holonomy<Mat2c>(form, path, domain, [](const CMat3& a) { return lambda_star_inverse(a); });
}

}  // namespace ashgeo
