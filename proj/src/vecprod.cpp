#include "ashgeo/vecprod.hpp"

namespace ashgeo {

void require_oriented_orthonormal(const Frame& e, const Mat3& q) {
  const Mat3& m = e.matrix();
  const double err = (m.transpose() * q * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!(err < 1e-8)) throw GeometryError("frame is not q-orthonormal");
  if (!(m.determinant() > 0.0)) throw GeometryError("frame is not oriented");
}

Vec3 ivp(const SliceMetric& q, const Vec3& x, const Vec3& y, const Binding& p) {
  return ivp<double>(q.at(p), x, y);
}

CVec3 ivp(const SliceMetric& q, const CVec3& x, const CVec3& y, const Binding& p) {
  return ivp<Complex>(q.at(p), x, y);
}

Vec3 ivp_hodge(const SliceMetric& q, const Vec3& x, const Vec3& y, const Binding& p) {
  return ivp_hodge<double>(q.at(p), x, y);
}

InducedProduct::InducedProduct(const SliceMetric& q)
    : e_(orthonormal_frame_field(q)), e_inv_(mat_mul(transpose(e_.m), q.components())) {}

VecField InducedProduct::operator()(const VecField& x, const VecField& y) const {
  const ExprVec3 u = mat_vec(e_inv_, x.c);
  const ExprVec3 v = mat_vec(e_inv_, y.c);
  return {mat_vec(e_.m, cross(u, v))};
}

}  // namespace ashgeo
