#pragma once

// The slice {t0} x Sigma inside g = -f dt^2 + g_t: unit normal, spacetime
// Levi-Civita connection, Weingarten map W(X) = nabla_X n and the second
// fundamental form K(X, Y) = <W(X), Y>.
//
// Spacetime index 0 is t, indices 1..3 are x1..x3.

#include <array>
#include <memory>

#include "ashgeo/fields.hpp"
#include "ashgeo/geometry.hpp"

namespace ashgeo {

using ExprVec4 = std::array<Expr, 4>;

/// n = f^{-1/2} d_t, the future-directed unit normal.
ExprVec4 unit_normal(const SpacetimeSplit& st);
/// Throws GeometryError when f <= 0 at p.
Vec4 unit_normal_at(const SpacetimeSplit& st, const Binding& p);

/// g(u, v) at p.
double spacetime_inner(const SpacetimeSplit& st, const Vec4& u, const Vec4& v, const Binding& p);

/// Christoffel symbols of the full spacetime metric.
class SpacetimeConnection {
 public:
  explicit SpacetimeConnection(const SpacetimeSplit& st);

  const SpacetimeSplit& split() const noexcept { return impl_->st; }
  const Expr& christoffel_expr(int mu, int nu, int rho) const {
    return impl_->gamma[16 * mu + 4 * nu + rho];
  }
  /// Gamma^mu_{nu rho} at p, flattened as [16 mu + 4 nu + rho].
  std::array<double, 64> christoffel(const Binding& p) const;

  /// nabla_X n for a spacetime vector X. The time component is returned
  /// as computed, so tangency can be checked.
  Vec4 weingarten4(const Vec4& x, const Binding& p) const;
  /// W(X) for X tangent to the slice. Throws InvalidArgument when x has a
  /// nonzero time component.
  Vec3 weingarten(const Vec4& x, const Binding& p) const;
  Vec3 weingarten(const Vec3& x, const Binding& p) const;

 private:
  struct Impl {
    explicit Impl(SpacetimeSplit s) : st(std::move(s)) {}
    SpacetimeSplit st;
    std::array<Expr, 64> gamma;
    Tape gamma_tape;
  };
  std::shared_ptr<const Impl> impl_;
};

/// W as a field, W^b_a = f^{-1/2} Gamma^b_{a0}; still depends on t.
EndoField weingarten_field(const SpacetimeSplit& st);
/// The same restricted to the slice t = t0. Throws GeometryError when t0 is
/// outside the time interval.
EndoField weingarten_field(const SpacetimeSplit& st, double t0);

/// K(X, Y) = <W(X), Y> with the induced metric at p.
double second_fundamental_form(const SpacetimeSplit& st, const Vec3& x, const Vec3& y,
                               const Binding& p);
/// K_ab = g_bc W^c_a at p.
Mat3 second_fundamental_form(const SpacetimeSplit& st, const Binding& p);
/// Closed form K_ab = d_t g_ab / (2 sqrt f).
Mat3 second_fundamental_form_split(const SpacetimeSplit& st, const Binding& p);
/// W = Q^{-1} K.
Mat3 weingarten_from_K(const Mat3& q, const Mat3& k);

}  // namespace ashgeo
