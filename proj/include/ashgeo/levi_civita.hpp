#pragma once

// Levi-Civita connection of a slice metric: Christoffel symbols, covariant
// derivatives of Expr vector fields and the Riemann curvature.
//
// Curvature convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
// - nabla_[X,Y] Z, i.e. R^d_{cab} = d_a G^d_{bc} - d_b G^d_{ac}
// + G^d_{ae} G^e_{bc} - G^d_{be} G^e_{ac} contracted with X^a Y^b Z^c.

#include <array>
#include <memory>
#include <mutex>

#include "ashgeo/fields.hpp"
#include "ashgeo/geometry.hpp"

namespace ashgeo {

/// Gamma^c_{ab} at one point, symmetric in (a, b).
class ChristoffelAtPoint {
 public:
  double operator()(int c, int a, int b) const { return g_[9 * c + 3 * a + b]; }
  double& operator()(int c, int a, int b) { return g_[9 * c + 3 * a + b]; }

  /// Gamma^c_{ab} X^a Y^b.
  Vec3 contract(const Vec3& x, const Vec3& y) const;

 private:
  std::array<double, 27> g_{};
};

class LeviCivita {
 public:
  explicit LeviCivita(const SliceMetric& q);

  const SliceMetric& metric() const noexcept { return impl_->q; }
  const ExprMat3& inverse_metric() const noexcept { return impl_->q_inv; }
  const Expr& christoffel_expr(int c, int a, int b) const { return impl_->gamma[9 * c + 3 * a + b]; }

  /// Throws GeometryError when q is degenerate at p.
  ChristoffelAtPoint christoffel(const Binding& p) const;

  /// (nabla_X Y)^c = X^a d_a Y^c + Gamma^c_{ab} X^a Y^b at p.
  Vec3 cov_deriv(const Vec3& x, const VecField& y, const Binding& p) const;
  Vec3 cov_deriv(const Vec3& x, const PreparedField& y, const Binding& p) const;
  /// The same as an Expr vector field.
  VecField cov_deriv_field(const VecField& x, const VecField& y) const;

  /// R(X,Y)Z at p.
  Vec3 riemann(const Vec3& x, const Vec3& y, const Vec3& z, const Binding& p) const;
  /// R^d_{cab} stored at [d][c][a][b].
  std::array<double, 81> riemann_components(const Binding& p) const;

 private:
  struct Impl {
    explicit Impl(SliceMetric m) : q(std::move(m)) {}
    SliceMetric q;
    ExprMat3 q_inv;
    std::array<Expr, 27> gamma;
    Tape gamma_tape;
    // d_e Gamma^c_{ab} at [27 e + 9 c + 3 a + b], built on first use.
    mutable std::once_flag dgamma_once;
    mutable Tape dgamma_tape;
  };
  const Tape& dgamma_tape() const;

  std::shared_ptr<Impl> impl_;
};

ChristoffelAtPoint christoffel(const SliceMetric& q, const Binding& p);
Vec3 cov_deriv(const SliceMetric& q, const Vec3& x, const VecField& y, const Binding& p);
Vec3 riemann(const SliceMetric& q, const Vec3& x, const Vec3& y, const VecField& z,
             const Binding& p);

}  // namespace ashgeo
