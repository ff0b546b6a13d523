#pragma once

// Linear-algebra aliases and Expr-valued tensor fields on a coordinate chart.

#include <array>
#include <complex>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "ashgeo/expr.hpp"

namespace ashgeo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;
using Vec4 = Eigen::Vector4d;
using Complex = std::complex<double>;

using ExprVec3 = std::array<Expr, 3>;
/// Row-major: m[row][col].
using ExprMat3 = std::array<std::array<Expr, 3>, 3>;

/// Name of the time coordinate.
inline constexpr std::string_view kTimeName = "t";
/// Names of the slice coordinates x1, x2, x3 (0-based index a -> "x{a+1}").
inline constexpr std::array<std::string_view, 3> kCoordNames{"x1", "x2", "x3"};

VarId time_id();
VarId coord_id(int a);

Expr coord(int a);
Expr time_coord();

/// Vector field with components X^a in the coordinate basis.
struct VecField {
  ExprVec3 c;

  static VecField zero();
  static VecField constant(const Vec3& v);
  /// The coordinate field d/dx^a.
  static VecField coordinate(int a);

  const Expr& operator[](int a) const { return c[static_cast<std::size_t>(a)]; }

  Vec3 at(const Binding& p) const;
  /// J[i][a] = d X^i / d x^a.
  ExprMat3 jacobian() const;
  /// (X(f)) for the directional derivative of a scalar field along this field.
  Expr derivative_of(const Expr& f) const;

  friend VecField operator+(const VecField& a, const VecField& b);
  friend VecField operator-(const VecField& a, const VecField& b);
  friend VecField operator*(const Expr& s, const VecField& a);
};

/// A vector field with its values and Jacobian compiled into one tape, for
/// repeated evaluation.
class PreparedField {
 public:
  explicit PreparedField(const VecField& f);

  const VecField& field() const noexcept { return f_; }
  Vec3 at(const Binding& p) const;
  /// Value and J(i, a) = d X^i / d x^a.
  std::pair<Vec3, Mat3> jet(const Binding& p) const;

 private:
  VecField f_;
  Tape tape_;
};

/// Coordinate Lie bracket [X, Y]^c = X^a d_a Y^c - Y^a d_a X^c.
VecField lie_bracket(const VecField& x, const VecField& y);

/// Pointwise linear map of the slice tangent space; m[b][a] = W^b_a so that
/// W(d_a) = W^b_a d_b and, at a point, W(X) = matrix * X.
struct EndoField {
  ExprMat3 m;

  static EndoField zero();
  static EndoField scaled_identity(const Expr& s);

  Mat3 at(const Binding& p) const;
  VecField apply(const VecField& x) const;
};

// Small dense helpers on Expr matrices.

Vec3 eval_vec(const ExprVec3& v, const Binding& p);
Mat3 eval_mat(const ExprMat3& m, const Binding& p);

Expr dot(const ExprVec3& a, const ExprVec3& b);
/// a^T M b.
Expr bilinear(const ExprMat3& m, const ExprVec3& a, const ExprVec3& b);
ExprVec3 mat_vec(const ExprMat3& m, const ExprVec3& v);
ExprMat3 mat_mul(const ExprMat3& a, const ExprMat3& b);
ExprMat3 transpose(const ExprMat3& m);
Expr determinant(const ExprMat3& m);
/// Inverse of a symmetric matrix, returned symmetric by construction.
ExprMat3 symmetric_inverse(const ExprMat3& m);
ExprMat3 inverse(const ExprMat3& m);
ExprVec3 column(const ExprMat3& m, int i);
ExprVec3 cross(const ExprVec3& a, const ExprVec3& b);

/// Plain (non-conjugating) cross product; valid for complex vectors.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> cross3(const Eigen::Matrix<Scalar, 3, 1>& a,
                                   const Eigen::Matrix<Scalar, 3, 1>& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

/// Levi-Civita symbol on {0,1,2} with eps(0,1,2) = +1.
constexpr int levi_civita_symbol(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

}  // namespace ashgeo
