#pragma once

// The Ashtekar covariant derivative nabla^A_X Y = nabla_X Y + beta W(X) . Y
// on a slice with metric q and Weingarten map W, its torsion and curvature,
// reconstruction of W, and local so(3) connection forms along a frame.
//
// A complex beta makes the outputs complex; q, W and frames stay real.

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "ashgeo/fields.hpp"
#include "ashgeo/geometry.hpp"
#include "ashgeo/levi_civita.hpp"
#include "ashgeo/vecprod.hpp"

namespace ashgeo {

/// Barbero-Immirzi parameter; nonzero.
class Beta {
 public:
  /// Throws InvalidArgument for beta = 0.
  explicit Beta(Complex value);
  Beta(double value) : Beta(Complex(value, 0.0)) {}  // NOLINT(google-explicit-constructor)

  Complex value() const noexcept { return v_; }
  bool is_real() const noexcept { return v_.imag() == 0.0; }

 private:
  Complex v_;
};

/// Basis M_1, M_2, M_3 of so(3) with (M_i)_{jk} = -eps_{ijk}, so that
/// M_i v = e_i x v and [M_i, M_j] = eps_{ijk} M_k.
struct So3Basis {
  static const Mat3& M(int i);
  /// sum_i c_i M_i.
  static Mat3 combine(const Vec3& c);
  static CMat3 combine(const CVec3& c);
  /// Components against {M_i}; only the antisymmetric part contributes.
  static CVec3 components(const CMat3& a);
  /// Largest entry of a + a^T.
  static double antisymmetry_residual(const CMat3& a);
};

/// A vector field sum_k beta^k V_k, i.e. a polynomial in beta with Expr
/// vector field coefficients. Iterated Ashtekar derivatives of real fields
/// have this form.
struct BetaField {
  std::vector<VecField> coeffs;

  static BetaField real(const VecField& v) { return {{v}}; }
  CVec3 at(const Binding& p, Complex beta) const;
};

/// Matrices A(d_a), a = 1..3, of a local connection 1-form.
struct LocalLieForm {
  std::array<CMat3, 3> a{CMat3::Zero(), CMat3::Zero(), CMat3::Zero()};

  /// sum_a v^a A(d_a).
  CMat3 along(const Vec3& v) const;
};

/// Components against {M_i}; row a, column i.
struct PhysicsComponents {
  Mat3 gamma;   // Gamma_a^i
  Mat3 k;       // k_a^i
  CMat3 A;      // A_a^i = Gamma_a^i + beta k_a^i
};

class AshtekarConnection {
 public:
  AshtekarConnection(Beta beta, const SliceMetric& q, EndoField w);

  Beta beta() const noexcept { return impl_->beta; }
  const SliceMetric& metric() const noexcept { return impl_->lc.metric(); }
  const EndoField& weingarten() const noexcept { return impl_->w; }
  const LeviCivita& levi_civita() const noexcept { return impl_->lc; }
  const InducedProduct& product() const noexcept { return impl_->prod; }
  Mat3 weingarten_at(const Binding& p) const { return impl_->w_at(p); }

  /// nabla^A_X Y at p.
  CVec3 deriv(const Vec3& x, const VecField& y, const Binding& p) const;
  CVec3 deriv(const Vec3& x, const PreparedField& y, const Binding& p) const;
  CVec3 deriv(const Vec3& x, const BetaField& y, const Binding& p) const;
  /// Coefficients of a BetaField, prepared.
  CVec3 deriv(const Vec3& x, const std::vector<PreparedField>& y, const Binding& p) const;
  /// nabla^A_X Y as a field, one degree higher in beta.
  BetaField deriv_field(const VecField& x, const BetaField& y) const;

  /// nabla^A_X Y - nabla^A_Y X - [X, Y].
  CVec3 torsion(const VecField& x, const VecField& y, const Binding& p) const;
  /// beta (W(X) . Y - W(Y) . X).
  CVec3 torsion_closed(const Vec3& x, const Vec3& y, const Binding& p) const;

  /// nabla^A_X nabla^A_Y Z - nabla^A_Y nabla^A_X Z - nabla^A_[X,Y] Z.
  CVec3 curvature(const VecField& x, const VecField& y, const VecField& z, const Binding& p) const;
  /// R(X,Y)Z + beta [(nabla_X W)Y - (nabla_Y W)X] . Z + beta^2 [W(X) . W(Y)] . Z.
  CVec3 curvature_closed(const VecField& x, const VecField& y, const VecField& z,
                         const Binding& p) const;

 private:
  struct Impl {
    Impl(Beta b, const SliceMetric& q, EndoField w_)
        : beta(b), lc(q), prod(q), w(std::move(w_)), w_tape(flatten(w)) {}
    static std::array<Expr, 9> flatten(const EndoField& w);
    Mat3 w_at(const Binding& p) const;

    Beta beta;
    LeviCivita lc;
    InducedProduct prod;
    EndoField w;
    Tape w_tape;
  };
  std::shared_ptr<const Impl> impl_;
};

/// R^A(X, Y)Z for fixed fields X, Y, Z at many points; the symbolic
/// derivatives are built once.
class CurvatureProbe {
 public:
  CurvatureProbe(const AshtekarConnection& conn, const VecField& x, const VecField& y,
                 const VecField& z);

  /// nabla^A_X nabla^A_Y Z - nabla^A_Y nabla^A_X Z - nabla^A_[X,Y] Z.
  CVec3 definitional(const Binding& p) const;
  /// R(X,Y)Z + beta [(nabla_X W)Y - (nabla_Y W)X] . Z + beta^2 [W(X) . W(Y)] . Z.
  CVec3 closed(const Binding& p) const;

 private:
  AshtekarConnection conn_;
  PreparedField x_, y_, z_, bracket_, wx_, wy_;
  std::vector<PreparedField> yz_, xz_;  // nabla^A_Y Z and nabla^A_X Z by powers of beta
};

/// Local connection form of nabla^A along a frame field e:
///   (A(d_a))_{yx} = <nabla^A_{d_a} e_x, e_y>,
/// i.e. (A(X) x) . y = <nabla^A_X e(x), e(y)> with the standard dot product
/// on R^3 on the left.
class LocalFormField {
 public:
  LocalFormField(AshtekarConnection conn, FrameField e);

  const FrameField& frame() const noexcept { return e_; }

  /// Throws GeometryError unless e is q-orthonormal at p (to 1e-8).
  LocalLieForm at(const Binding& p) const;
  /// The Levi-Civita part (beta dropped) and the extrinsic part
  /// <W(d_a) . e_x, e_y>, so that at(p) = gamma + beta k.
  std::pair<std::array<Mat3, 3>, std::array<Mat3, 3>> parts(const Binding& p) const;

  /// Gamma_a^k = 1/2 eps_ijk <nabla_a e_i, e_j>, k_a^i = K(d_a, d_b) e_i^b
  /// and A_a^i. Requires e oriented.
  PhysicsComponents physics_components(const Binding& p) const;

 private:
  struct Point {
    Mat3 q, e, w;
    std::array<Mat3, 3> nabla;  // nabla[a] column x = nabla_{d_a} e_x
  };
  Point evaluate(const Binding& p) const;

  AshtekarConnection conn_;
  FrameField e_;
  Tape frame_tape_;  // e (9) followed by d_a e (27)
};

LocalLieForm local_form(const AshtekarConnection& conn, const FrameField& e, const Binding& p);
PhysicsComponents physics_components(const AshtekarConnection& conn, const FrameField& e,
                                     const Binding& p);

/// Recovers W from B(X, Y) = beta W(X) . Y by
///   W(X) = 1/(2 beta) sum_i e_i . B(X, e_i)
/// for the Gram-Schmidt frame of q. Column a of the result is W(d_a).
using BilinearMap = std::function<CVec3(const Vec3&, const Vec3&)>;
CMat3 reconstruct_W(Beta beta, const Mat3& q, const BilinearMap& b);

}  // namespace ashgeo
