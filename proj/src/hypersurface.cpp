#include "ashgeo/hypersurface.hpp"

#include <cmath>

#include "ashgeo/error.hpp"

namespace ashgeo {

namespace {

VarId spacetime_id(int mu) { return mu == 0 ? time_id() : coord_id(mu - 1); }

double require_positive_lapse(const SpacetimeSplit& st, const Binding& p) {
  const double f = eval(st.lapse(), p);
  if (!(f > 0.0)) throw GeometryError("lapse is not positive");
  return f;
}

}  // namespace

ExprVec4 unit_normal(const SpacetimeSplit& st) {
  return {pow(st.lapse(), Expr(-0.5)), Expr(0.0), Expr(0.0), Expr(0.0)};
}

Vec4 unit_normal_at(const SpacetimeSplit& st, const Binding& p) {
  const double f = require_positive_lapse(st, p);
  return {1.0 / std::sqrt(f), 0.0, 0.0, 0.0};
}

double spacetime_inner(const SpacetimeSplit& st, const Vec4& u, const Vec4& v, const Binding& p) {
  const double f = eval(st.lapse(), p);
  const Mat3 g = st.spatial_metric().at(p);
  return -f * u(0) * v(0) + u.tail<3>().dot(g * v.tail<3>());
}

SpacetimeConnection::SpacetimeConnection(const SpacetimeSplit& st) {
  auto impl = std::make_shared<Impl>(st);

  // Block metric G = diag(-f, g) and its inverse.
  std::array<std::array<Expr, 4>, 4> G;
  std::array<std::array<Expr, 4>, 4> Ginv;
  G[0][0] = -st.lapse();
  Ginv[0][0] = Expr(-1.0) / st.lapse();
  const ExprMat3& g = st.spatial_metric().components();
  const ExprMat3 ginv = symmetric_inverse(g);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      G[a + 1][b + 1] = g[a][b];
      Ginv[a + 1][b + 1] = ginv[a][b];
    }
  }
  // dG[s][m][n] = d_s G_mn
  std::array<std::array<std::array<Expr, 4>, 4>, 4> dG;
  for (int s = 0; s < 4; ++s) {
    for (int m = 0; m < 4; ++m) {
      for (int n = m; n < 4; ++n) {
        dG[s][m][n] = diff(G[m][n], spacetime_id(s));
        dG[s][n][m] = dG[s][m][n];
      }
    }
  }
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int rho = nu; rho < 4; ++rho) {
        Expr sum;
        for (int s = 0; s < 4; ++s) {
          if (Ginv[mu][s].is_zero()) continue;
          const Expr bracket = dG[nu][s][rho] + dG[rho][s][nu] - dG[s][nu][rho];
          if (!bracket.is_zero()) sum += Ginv[mu][s] * bracket;
        }
        sum = Expr(0.5) * sum;
        impl->gamma[16 * mu + 4 * nu + rho] = sum;
        impl->gamma[16 * mu + 4 * rho + nu] = sum;
      }
    }
  }
  impl->gamma_tape = Tape(impl->gamma);
  impl_ = std::move(impl);
}

std::array<double, 64> SpacetimeConnection::christoffel(const Binding& p) const {
  std::array<double, 64> out{};
  impl_->gamma_tape.eval(p, out);
  return out;
}

Vec4 SpacetimeConnection::weingarten4(const Vec4& x, const Binding& p) const {
  impl_->st.validate_at(p);
  const double f = eval(impl_->st.lapse(), p);
  // n^mu = (f^{-1/2}, 0, 0, 0) with d_a n = 0 and d_t n^0 = -f'/(2 f^{3/2}).
  const double n0 = 1.0 / std::sqrt(f);
  const double dn0 = eval(diff(unit_normal(impl_->st)[0], time_id()), p);
  const auto g = christoffel(p);
  Vec4 out = Vec4::Zero();
  out(0) = x(0) * dn0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) out(mu) += g[16 * mu + 4 * nu + 0] * x(nu) * n0;
  }
  return out;
}

Vec3 SpacetimeConnection::weingarten(const Vec4& x, const Binding& p) const {
  if (x(0) != 0.0) throw InvalidArgument("weingarten: X must be tangent to the slice");
  return weingarten4(x, p).tail<3>();
}

Vec3 SpacetimeConnection::weingarten(const Vec3& x, const Binding& p) const {
  Vec4 v;
  v << 0.0, x;
  return weingarten(v, p);
}

EndoField weingarten_field(const SpacetimeSplit& st) {
  const SpacetimeConnection conn(st);
  const Expr n0 = unit_normal(st)[0];
  EndoField w;
  for (int b = 0; b < 3; ++b) {
    for (int a = 0; a < 3; ++a) w.m[b][a] = conn.christoffel_expr(b + 1, a + 1, 0) * n0;
  }
  return w;
}

EndoField weingarten_field(const SpacetimeSplit& st, double t0) {
  if (!st.time_interval().contains(t0)) {
    throw GeometryError("t0 = " + std::to_string(t0) + " outside the time interval");
  }
  EndoField w = weingarten_field(st);
  for (auto& row : w.m) {
    for (auto& e : row) e = substitute(e, time_id(), Expr(t0));
  }
  return w;
}

Mat3 second_fundamental_form(const SpacetimeSplit& st, const Binding& p) {
  const SpacetimeConnection conn(st);
  Mat3 w;
  for (int a = 0; a < 3; ++a) w.col(a) = conn.weingarten(Vec3(Vec3::Unit(a)), p);
  return (st.spatial_metric().at(p) * w).transpose();
}

double second_fundamental_form(const SpacetimeSplit& st, const Vec3& x, const Vec3& y,
                               const Binding& p) {
  const SpacetimeConnection conn(st);
  return conn.weingarten(x, p).dot(st.spatial_metric().at(p) * y);
}

Mat3 second_fundamental_form_split(const SpacetimeSplit& st, const Binding& p) {
  const double f = require_positive_lapse(st, p);
  Mat3 k;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      k(a, b) = eval(diff(st.spatial_metric()(a, b), time_id()), p) / (2.0 * std::sqrt(f));
      k(b, a) = k(a, b);
    }
  }
  return k;
}

Mat3 weingarten_from_K(const Mat3& q, const Mat3& k) {
  if (!(min_leading_minor(q) > 0.0)) throw GeometryError("metric is not positive definite");
  return q.ldlt().solve(k);
}

}  // namespace ashgeo
