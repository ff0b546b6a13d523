#include "ashgeo/levi_civita.hpp"

#include "ashgeo/error.hpp"

namespace ashgeo {

Vec3 ChristoffelAtPoint::contract(const Vec3& x, const Vec3& y) const {
  Vec3 out = Vec3::Zero();
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) out(c) += (*this)(c, a, b) * x(a) * y(b);
    }
  }
  return out;
}

LeviCivita::LeviCivita(const SliceMetric& q) : impl_(std::make_shared<Impl>(q)) {
  const ExprMat3& g = q.components();
  impl_->q_inv = symmetric_inverse(g);

  // dg[d][a][b] = d_d g_ab
  std::array<ExprMat3, 3> dg;
  for (int d = 0; d < 3; ++d) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        dg[d][a][b] = diff(g[a][b], coord_id(d));
        dg[d][b][a] = dg[d][a][b];
      }
    }
  }
  // Gamma^c_ab = 1/2 Q^{cd} (d_a q_db + d_b q_da - d_d q_ab)
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        Expr s;
        for (int d = 0; d < 3; ++d) {
          const Expr bracket = dg[a][d][b] + dg[b][d][a] - dg[d][a][b];
          if (!bracket.is_zero()) s += impl_->q_inv[c][d] * bracket;
        }
        s = Expr(0.5) * s;
        impl_->gamma[9 * c + 3 * a + b] = s;
        impl_->gamma[9 * c + 3 * b + a] = s;
      }
    }
  }
  impl_->gamma_tape = Tape(impl_->gamma);
}

ChristoffelAtPoint LeviCivita::christoffel(const Binding& p) const {
  impl_->q.require_positive_definite(p);
  std::array<double, 27> v{};
  impl_->gamma_tape.eval(p, v);
  ChristoffelAtPoint out;
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) out(c, a, b) = v[9 * c + 3 * a + b];
    }
  }
  return out;
}

const Tape& LeviCivita::dgamma_tape() const {
  std::call_once(impl_->dgamma_once, [this] {
    std::vector<Expr> d;
    d.reserve(81);
    for (int e = 0; e < 3; ++e) {
      auto de = diff(std::span<const Expr>(impl_->gamma), coord_id(e));
      d.insert(d.end(), de.begin(), de.end());
    }
    impl_->dgamma_tape = Tape(d);
  });
  return impl_->dgamma_tape;
}

Vec3 LeviCivita::cov_deriv(const Vec3& x, const VecField& y, const Binding& p) const {
  return cov_deriv(x, PreparedField(y), p);
}

Vec3 LeviCivita::cov_deriv(const Vec3& x, const PreparedField& y, const Binding& p) const {
  const ChristoffelAtPoint gamma = christoffel(p);
  const auto [value, jac] = y.jet(p);
  return jac * x + gamma.contract(x, value);
}

VecField LeviCivita::cov_deriv_field(const VecField& x, const VecField& y) const {
  VecField out;
  for (int c = 0; c < 3; ++c) {
    Expr s = x.derivative_of(y.c[c]);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) s += christoffel_expr(c, a, b) * x.c[a] * y.c[b];
    }
    out.c[c] = s;
  }
  return out;
}

std::array<double, 81> LeviCivita::riemann_components(const Binding& p) const {
  const ChristoffelAtPoint g = christoffel(p);
  std::array<double, 81> dg{};
  dgamma_tape().eval(p, dg);
  auto dG = [&](int e, int c, int a, int b) { return dg[27 * e + 9 * c + 3 * a + b]; };

  std::array<double, 81> r{};
  for (int d = 0; d < 3; ++d) {
    for (int c = 0; c < 3; ++c) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          double v = dG(a, d, b, c) - dG(b, d, a, c);
          for (int e = 0; e < 3; ++e) v += g(d, a, e) * g(e, b, c) - g(d, b, e) * g(e, a, c);
          r[27 * d + 9 * c + 3 * a + b] = v;
        }
      }
    }
  }
  return r;
}

Vec3 LeviCivita::riemann(const Vec3& x, const Vec3& y, const Vec3& z, const Binding& p) const {
  const auto r = riemann_components(p);
  Vec3 out = Vec3::Zero();
  for (int d = 0; d < 3; ++d) {
    for (int c = 0; c < 3; ++c) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) out(d) += r[27 * d + 9 * c + 3 * a + b] * z(c) * x(a) * y(b);
      }
    }
  }
  return out;
}

ChristoffelAtPoint christoffel(const SliceMetric& q, const Binding& p) {
  return LeviCivita(q).christoffel(p);
}

Vec3 cov_deriv(const SliceMetric& q, const Vec3& x, const VecField& y, const Binding& p) {
  return LeviCivita(q).cov_deriv(x, y, p);
}

Vec3 riemann(const SliceMetric& q, const Vec3& x, const Vec3& y, const VecField& z,
             const Binding& p) {
  return LeviCivita(q).riemann(x, y, z.at(p), p);
}

}  // namespace ashgeo
