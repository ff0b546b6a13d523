#include "ashgeo/ashtekar.hpp"

#include "ashgeo/error.hpp"

namespace ashgeo {

Beta::Beta(Complex value) : v_(value) {
  if (value == Complex(0.0, 0.0)) throw InvalidArgument("Barbero-Immirzi parameter must be nonzero");
}

// ---------------------------------------------------------------------------
// so(3)
// ---------------------------------------------------------------------------

const Mat3& So3Basis::M(int i) {
  static const std::array<Mat3, 3> basis = [] {
    std::array<Mat3, 3> m;
    for (int b = 0; b < 3; ++b) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) m[b](j, k) = -levi_civita_symbol(b, j, k);
      }
    }
    return m;
  }();
  return basis.at(static_cast<std::size_t>(i));
}

Mat3 So3Basis::combine(const Vec3& c) { return c(0) * M(0) + c(1) * M(1) + c(2) * M(2); }

CMat3 So3Basis::combine(const CVec3& c) {
  return c(0) * M(0).cast<Complex>() + c(1) * M(1).cast<Complex>() + c(2) * M(2).cast<Complex>();
}

CVec3 So3Basis::components(const CMat3& a) {
  // (sum c_i M_i)_{jk} = -eps_{ijk} c_i, hence c_1 = A_32, c_2 = A_13, c_3 = A_21.
  const CMat3 s = 0.5 * (a - a.transpose());
  return {s(2, 1), s(0, 2), s(1, 0)};
}

double So3Basis::antisymmetry_residual(const CMat3& a) {
  return (a + a.transpose()).cwiseAbs().maxCoeff();
}

CVec3 BetaField::at(const Binding& p, Complex beta) const {
  CVec3 out = CVec3::Zero();
  Complex power(1.0, 0.0);
  for (const auto& c : coeffs) {
    out += power * c.at(p).cast<Complex>();
    power *= beta;
  }
  return out;
}

CMat3 LocalLieForm::along(const Vec3& v) const { return v(0) * a[0] + v(1) * a[1] + v(2) * a[2]; }

// ---------------------------------------------------------------------------
// AshtekarConnection
// ---------------------------------------------------------------------------

std::array<Expr, 9> AshtekarConnection::Impl::flatten(const EndoField& w) {
  std::array<Expr, 9> flat;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) flat[3 * r + c] = w.m[r][c];
  }
  return flat;
}

Mat3 AshtekarConnection::Impl::w_at(const Binding& p) const {
  std::array<double, 9> v{};
  w_tape.eval(p, v);
  return Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(v.data());
}

AshtekarConnection::AshtekarConnection(Beta beta, const SliceMetric& q, EndoField w)
    : impl_(std::make_shared<const Impl>(beta, q, std::move(w))) {}

CVec3 AshtekarConnection::deriv(const Vec3& x, const VecField& y, const Binding& p) const {
  return deriv(x, PreparedField(y), p);
}

CVec3 AshtekarConnection::deriv(const Vec3& x, const PreparedField& y, const Binding& p) const {
  const Mat3 q = metric().require_positive_definite(p);
  const Vec3 wx = impl_->w_at(p) * x;
  const Complex beta = impl_->beta.value();
  return impl_->lc.cov_deriv(x, y, p).cast<Complex>() + beta * ivp<double>(q, wx, y.at(p)).cast<Complex>();
}

CVec3 AshtekarConnection::deriv(const Vec3& x, const BetaField& y, const Binding& p) const {
  std::vector<PreparedField> prepared;
  prepared.reserve(y.coeffs.size());
  for (const auto& c : y.coeffs) prepared.emplace_back(c);
  return deriv(x, prepared, p);
}

CVec3 AshtekarConnection::deriv(const Vec3& x, const std::vector<PreparedField>& y,
                                const Binding& p) const {
  const Mat3 q = metric().require_positive_definite(p);
  const Vec3 wx = impl_->w_at(p) * x;
  const Complex beta = impl_->beta.value();
  CVec3 out = CVec3::Zero();
  Complex power(1.0, 0.0);
  for (const auto& c : y) {
    const Vec3 term = impl_->lc.cov_deriv(x, c, p);
    out += power * (term.cast<Complex>() + beta * ivp<double>(q, wx, c.at(p)).cast<Complex>());
    power *= beta;
  }
  return out;
}

BetaField AshtekarConnection::deriv_field(const VecField& x, const BetaField& y) const {
  BetaField out;
  out.coeffs.assign(y.coeffs.size() + 1, VecField::zero());
  const VecField wx = impl_->w.apply(x);
  for (std::size_t k = 0; k < y.coeffs.size(); ++k) {
    out.coeffs[k] = out.coeffs[k] + impl_->lc.cov_deriv_field(x, y.coeffs[k]);
    out.coeffs[k + 1] = impl_->prod(wx, y.coeffs[k]);
  }
  return out;
}

CVec3 AshtekarConnection::torsion(const VecField& x, const VecField& y, const Binding& p) const {
  return deriv(x.at(p), y, p) - deriv(y.at(p), x, p) - lie_bracket(x, y).at(p).cast<Complex>();
}

CVec3 AshtekarConnection::torsion_closed(const Vec3& x, const Vec3& y, const Binding& p) const {
  const Mat3 q = metric().require_positive_definite(p);
  const Mat3 w = impl_->w_at(p);
  const Vec3 t = ivp<double>(q, w * x, y) - ivp<double>(q, w * y, x);
  return impl_->beta.value() * t.cast<Complex>();
}

CVec3 AshtekarConnection::curvature(const VecField& x, const VecField& y, const VecField& z,
                                    const Binding& p) const {
  return CurvatureProbe(*this, x, y, z).definitional(p);
}

CVec3 AshtekarConnection::curvature_closed(const VecField& x, const VecField& y,
                                           const VecField& z, const Binding& p) const {
  return CurvatureProbe(*this, x, y, z).closed(p);
}

namespace {

std::vector<PreparedField> prepare(const BetaField& f) {
  std::vector<PreparedField> out;
  out.reserve(f.coeffs.size());
  for (const auto& c : f.coeffs) out.emplace_back(c);
  return out;
}

}  // namespace

CurvatureProbe::CurvatureProbe(const AshtekarConnection& conn, const VecField& x,
                               const VecField& y, const VecField& z)
    : conn_(conn),
      x_(x),
      y_(y),
      z_(z),
      bracket_(lie_bracket(x, y)),
      wx_(conn.weingarten().apply(x)),
      wy_(conn.weingarten().apply(y)),
      yz_(prepare(conn.deriv_field(y, BetaField::real(z)))),
      xz_(prepare(conn.deriv_field(x, BetaField::real(z)))) {}

CVec3 CurvatureProbe::definitional(const Binding& p) const {
  return conn_.deriv(x_.at(p), yz_, p) - conn_.deriv(y_.at(p), xz_, p) -
         conn_.deriv(bracket_.at(p), z_, p);
}

CVec3 CurvatureProbe::closed(const Binding& p) const {
  const Mat3 q = conn_.metric().require_positive_definite(p);
  const Mat3 w = conn_.weingarten_at(p);
  const LeviCivita& lc = conn_.levi_civita();
  const Vec3 xp = x_.at(p);
  const Vec3 yp = y_.at(p);
  const Vec3 zp = z_.at(p);
  // (nabla_X W) Y = nabla_X (W(Y)) - W(nabla_X Y)
  const Vec3 dwxy = lc.cov_deriv(xp, wy_, p) - w * lc.cov_deriv(xp, y_, p);
  const Vec3 dwyx = lc.cov_deriv(yp, wx_, p) - w * lc.cov_deriv(yp, x_, p);
  const Complex beta = conn_.beta().value();
  const Vec3 r = lc.riemann(xp, yp, zp, p);
  const Vec3 first = ivp<double>(q, dwxy - dwyx, zp);
  const Vec3 second = ivp<double>(q, ivp<double>(q, w * xp, w * yp), zp);
  return r.cast<Complex>() + beta * first.cast<Complex>() + beta * beta * second.cast<Complex>();
}

// ---------------------------------------------------------------------------
// Local forms
// ---------------------------------------------------------------------------

namespace {

std::vector<Expr> frame_outputs(const FrameField& e) {
  std::vector<Expr> out;
  out.reserve(36);
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) out.push_back(e.m[a][i]);
  }
  const std::vector<Expr> base(out);
  for (int d = 0; d < 3; ++d) {
    auto dd = diff(std::span<const Expr>(base), coord_id(d));
    out.insert(out.end(), dd.begin(), dd.end());
  }
  return out;
}

}  // namespace

LocalFormField::LocalFormField(AshtekarConnection conn, FrameField e)
    : conn_(std::move(conn)), e_(std::move(e)), frame_tape_(frame_outputs(e_)) {}

LocalFormField::Point LocalFormField::evaluate(const Binding& p) const {
  Point pt;
  pt.q = conn_.metric().require_positive_definite(p);
  std::array<double, 36> v{};
  frame_tape_.eval(p, v);
  using RowMat = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;
  pt.e = Eigen::Map<const RowMat>(v.data());
  const double err = (pt.e.transpose() * pt.q * pt.e - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!(err < 1e-8)) throw GeometryError("frame is not q-orthonormal");
  const ChristoffelAtPoint gamma = conn_.levi_civita().christoffel(p);
  for (int d = 0; d < 3; ++d) {
    const Mat3 de = Eigen::Map<const RowMat>(v.data() + 9 * (d + 1));
    for (int x = 0; x < 3; ++x) {
      pt.nabla[d].col(x) = de.col(x) + gamma.contract(Vec3::Unit(d), pt.e.col(x));
    }
  }
  pt.w = conn_.weingarten_at(p);
  return pt;
}

std::pair<std::array<Mat3, 3>, std::array<Mat3, 3>> LocalFormField::parts(const Binding& p) const {
  const Point pt = evaluate(p);
  std::array<Mat3, 3> gamma;
  std::array<Mat3, 3> k;
  for (int a = 0; a < 3; ++a) {
    gamma[a] = pt.e.transpose() * pt.q * pt.nabla[a];
    const Vec3 wa = pt.w.col(a);
    for (int x = 0; x < 3; ++x) {
      const Vec3 prod = ivp<double>(pt.q, wa, Vec3(pt.e.col(x)));
      k[a].col(x) = pt.e.transpose() * pt.q * prod;
    }
  }
  return {gamma, k};
}

LocalLieForm LocalFormField::at(const Binding& p) const {
  const auto [gamma, k] = parts(p);
  const Complex beta = conn_.beta().value();
  LocalLieForm out;
  for (int a = 0; a < 3; ++a) out.a[a] = gamma[a].cast<Complex>() + beta * k[a].cast<Complex>();
  return out;
}

PhysicsComponents LocalFormField::physics_components(const Binding& p) const {
  const Point pt = evaluate(p);
  if (!(pt.e.determinant() > 0.0)) throw GeometryError("frame is not oriented");
  PhysicsComponents out;
  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const int eps = levi_civita_symbol(i, j, k);
          if (eps != 0) s += eps * pt.nabla[a].col(i).dot(pt.q * pt.e.col(j));
        }
      }
      out.gamma(a, k) = 0.5 * s;
    }
  }
  // K_ab = q_bc W^c_a, k_a^i = K_ab e_i^b.
  const Mat3 K = (pt.q * pt.w).transpose();
  out.k = K * pt.e;
  out.A = out.gamma.cast<Complex>() + conn_.beta().value() * out.k.cast<Complex>();
  return out;
}

LocalLieForm local_form(const AshtekarConnection& conn, const FrameField& e, const Binding& p) {
  return LocalFormField(conn, e).at(p);
}

PhysicsComponents physics_components(const AshtekarConnection& conn, const FrameField& e,
                                     const Binding& p) {
  return LocalFormField(conn, e).physics_components(p);
}

CMat3 reconstruct_W(Beta beta, const Mat3& q, const BilinearMap& b) {
  const Frame e = orthonormal_frame(q);
  CMat3 w = CMat3::Zero();
  for (int a = 0; a < 3; ++a) {
    const Vec3 x = Vec3::Unit(a);
    CVec3 sum = CVec3::Zero();
    for (int i = 0; i < 3; ++i) {
      const CVec3 ei = e.vector(i).cast<Complex>();
      sum += ivp<Complex>(q, ei, b(x, e.vector(i)));
    }
    w.col(a) = sum / (2.0 * beta.value());
  }
  return w;
}

}  // namespace ashgeo
