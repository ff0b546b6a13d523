#pragma once

// The induced vector product X . Y = e[e^{-1}X x e^{-1}Y] on a Riemannian
// 3-manifold, for any oriented q-orthonormal frame e. Complex arguments are
// handled by bilinear extension.

#include "ashgeo/error.hpp"
#include "ashgeo/fields.hpp"
#include "ashgeo/geometry.hpp"

namespace ashgeo {

template <typename Scalar>
using Vec3T = Eigen::Matrix<Scalar, 3, 1>;

/// Bilinear (not sesquilinear) pairing x^T Q y.
template <typename Scalar>
Scalar inner(const Mat3& q, const Vec3T<Scalar>& x, const Vec3T<Scalar>& y) {
  return x.transpose() * (q.cast<Scalar>() * y);
}

/// Throws GeometryError unless e is oriented and q-orthonormal to 1e-8.
void require_oriented_orthonormal(const Frame& e, const Mat3& q);

template <typename Scalar>
Vec3T<Scalar> ivp_with_frame(const Frame& e, const Mat3& q, const Vec3T<Scalar>& x,
                             const Vec3T<Scalar>& y) {
  require_oriented_orthonormal(e, q);
  const Mat3 inv = e.matrix().inverse();
  const Vec3T<Scalar> u = inv.cast<Scalar>() * x;
  const Vec3T<Scalar> v = inv.cast<Scalar>() * y;
  return e.matrix().cast<Scalar>() * cross3<Scalar>(u, v);
}

/// X . Y through the Gram-Schmidt frame of q.
template <typename Scalar>
Vec3T<Scalar> ivp(const Mat3& q, const Vec3T<Scalar>& x, const Vec3T<Scalar>& y) {
  return ivp_with_frame<Scalar>(orthonormal_frame(q), q, x, y);
}

Vec3 ivp(const SliceMetric& q, const Vec3& x, const Vec3& y, const Binding& p);
CVec3 ivp(const SliceMetric& q, const CVec3& x, const CVec3& y, const Binding& p);

/// (X . Y)^c = sqrt(det Q) Q^{cd} eps_{dab} X^a Y^b, the Hodge dual of X ^ Y.
/// Shares no code with ivp(); used to cross-check it.
template <typename Scalar>
Vec3T<Scalar> ivp_hodge(const Mat3& q, const Vec3T<Scalar>& x, const Vec3T<Scalar>& y) {
  const double det = q.determinant();
  if (!(det > 0.0) || !(q(0, 0) > 0.0)) throw GeometryError("metric is not positive definite");
  Vec3T<Scalar> lowered = Vec3T<Scalar>::Zero();
  for (int d = 0; d < 3; ++d) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const int eps = levi_civita_symbol(d, a, b);
        if (eps != 0) lowered(d) += static_cast<double>(eps) * x(a) * y(b);
      }
    }
  }
  return std::sqrt(det) * (q.inverse().cast<Scalar>() * lowered);
}

Vec3 ivp_hodge(const SliceMetric& q, const Vec3& x, const Vec3& y, const Binding& p);

/// The induced product on Expr vector fields, built on the symbolic
/// Gram-Schmidt frame of q.
class InducedProduct {
 public:
  explicit InducedProduct(const SliceMetric& q);

  const FrameField& frame() const noexcept { return e_; }
  VecField operator()(const VecField& x, const VecField& y) const;

 private:
  FrameField e_;
  ExprMat3 e_inv_;  // e^T Q
};

}  // namespace ashgeo
