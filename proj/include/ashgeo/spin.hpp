#pragma once

// su(2), the double cover lambda: SU(2) -> SO(3), its differential
// lambda_*, closed-form exponentials and holonomies of local connection
// forms along paths.

#include <array>
#include <functional>

#include "ashgeo/ashtekar.hpp"

namespace ashgeo {

using Mat2c = Eigen::Matrix2cd;

/// tau_j = -(i/2) sigma_j, so that [tau_i, tau_j] = eps_ijk tau_k and
/// tr(tau_i tau_j) = -delta_ij / 2.
struct Su2Basis {
  static const Mat2c& tau(int j);
  static Mat2c combine(const CVec3& c);
  /// Components against {tau_j}: c_j = -2 tr(tau_j xi).
  static CVec3 components(const Mat2c& xi);
};

/// tau_i -> M_i extended complex-linearly. Throws InvalidArgument when xi is
/// not in the span of {tau_i} (residual above 1e-12).
CMat3 lambda_star(const Mat2c& xi);
/// M_i -> tau_i. Throws InvalidArgument when a is not antisymmetric.
Mat2c lambda_star_inverse(const CMat3& a);

/// su(2) form with Atilde(d_a) = lambda_*^{-1}(A(d_a)).
struct SpinForm {
  std::array<Mat2c, 3> a{Mat2c::Zero(), Mat2c::Zero(), Mat2c::Zero()};

  Mat2c along(const Vec3& v) const { return v(0) * a[0] + v(1) * a[1] + v(2) * a[2]; }
};
SpinForm lift_connection(const LocalLieForm& form);
LocalLieForm lower_connection(const SpinForm& form);

/// exp of sum_i c_i M_i by the Rodrigues formula (complex c allowed).
CMat3 exp_so3(const CVec3& c);
Mat3 exp_so3(const Vec3& c);
/// exp of sum_i c_i tau_i = cos(s/2) + (sin(s/2)/(s/2)) X with s^2 = c . c.
Mat2c exp_su2(const CVec3& c);

/// lambda(U)_{ji} = -2 tr(tau_j U tau_i U^{-1}). Requires U in SU(2) to
/// 1e-8 (unitary, det 1); throws InvalidArgument otherwise.
Mat3 covering_map(const Mat2c& u);
/// The same formula on SL(2, C); only det U = 1 is required.
CMat3 covering_map_complex(const Mat2c& u);

/// Curve c(s), s in [0, 1], in slice coordinates; components are
/// expressions in the variable `s`.
struct PathSpec {
  std::array<Expr, 3> c;
  int steps = 200;

  /// Straight segment from `from` to `to`.
  static PathSpec segment(const Vec3& from, const Vec3& to, int steps = 200);
  /// Parses the three components with `s` as the only variable.
  static PathSpec parse(const std::array<std::string, 3>& components, int steps = 200);
  /// c(1 - s).
  PathSpec reversed() const;
};

/// Variable used by PathSpec.
VarId path_parameter();

/// A connection form as a function of the point.
using LieFormField = std::function<LocalLieForm(const Binding&)>;

LieFormField constant_form(const LocalLieForm& form);
/// A_a = sum_i A_a^i M_i with Expr components; row a, column i.
LieFormField component_form(const std::array<std::array<Expr, 3>, 3>& components);
/// The local form of an Ashtekar connection along a frame field.
LieFormField ashtekar_form(const LocalFormField& field);

struct HolonomyDomain {
  Chart chart;
  /// Extra bindings held fixed along the path, e.g. the slice time.
  Binding fixed;
};

/// Solves U'(s) = -A(c'(s)) U(s), U(0) = 1 with classical RK4 over
/// path.steps uniform steps. Throws InvalidArgument for fewer than 10
/// steps and GeometryError when the path leaves the chart.
CMat3 holonomy_so3(const LieFormField& form, const PathSpec& path, const HolonomyDomain& domain);
Mat2c holonomy_su2(const LieFormField& form, const PathSpec& path, const HolonomyDomain& domain);

}  // namespace ashgeo
