#include "ashgeo/fields.hpp"

#include "ashgeo/error.hpp"

namespace ashgeo {

VarId time_id() {
  static const VarId id = intern(kTimeName);
  return id;
}

VarId coord_id(int a) {
  static const std::array<VarId, 3> ids{intern(kCoordNames[0]), intern(kCoordNames[1]),
                                        intern(kCoordNames[2])};
  return ids.at(static_cast<std::size_t>(a));
}

Expr coord(int a) { return Expr::var(coord_id(a)); }
Expr time_coord() { return Expr::var(time_id()); }

VecField VecField::zero() { return {}; }

VecField VecField::constant(const Vec3& v) { return {{Expr(v(0)), Expr(v(1)), Expr(v(2))}}; }

VecField VecField::coordinate(int a) {
  Vec3 v = Vec3::Zero();
  v(a) = 1.0;
  return constant(v);
}

Vec3 VecField::at(const Binding& p) const { return eval_vec(c, p); }

ExprMat3 VecField::jacobian() const {
  ExprMat3 j;
  for (int a = 0; a < 3; ++a) {
    auto d = diff(std::span<const Expr>(c), coord_id(a));
    for (int i = 0; i < 3; ++i) j[i][a] = d[i];
  }
  return j;
}

Expr VecField::derivative_of(const Expr& f) const {
  Expr out;
  for (int a = 0; a < 3; ++a) out += c[a] * diff(f, coord_id(a));
  return out;
}

VecField operator+(const VecField& a, const VecField& b) {
  return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
}

VecField operator-(const VecField& a, const VecField& b) {
  return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}};
}

VecField operator*(const Expr& s, const VecField& a) {
  return {{s * a.c[0], s * a.c[1], s * a.c[2]}};
}

namespace {

std::vector<Expr> jet_outputs(const VecField& f) {
  std::vector<Expr> out(f.c.begin(), f.c.end());
  const ExprMat3 j = f.jacobian();
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) out.push_back(j[i][a]);
  }
  return out;
}

}  // namespace

PreparedField::PreparedField(const VecField& f) : f_(f), tape_(jet_outputs(f)) {}

Vec3 PreparedField::at(const Binding& p) const { return jet(p).first; }

std::pair<Vec3, Mat3> PreparedField::jet(const Binding& p) const {
  std::array<double, 12> v{};
  tape_.eval(p, v);
  Mat3 j;
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) j(i, a) = v[3 + 3 * i + a];
  }
  return {Vec3(v[0], v[1], v[2]), j};
}

VecField lie_bracket(const VecField& x, const VecField& y) {
  VecField out;
  for (int c = 0; c < 3; ++c) out.c[c] = x.derivative_of(y.c[c]) - y.derivative_of(x.c[c]);
  return out;
}

EndoField EndoField::zero() { return {}; }

EndoField EndoField::scaled_identity(const Expr& s) {
  EndoField w;
  for (int a = 0; a < 3; ++a) w.m[a][a] = s;
  return w;
}

Mat3 EndoField::at(const Binding& p) const { return eval_mat(m, p); }

VecField EndoField::apply(const VecField& x) const { return {mat_vec(m, x.c)}; }

Vec3 eval_vec(const ExprVec3& v, const Binding& p) {
  const Tape tape(v);
  Vec3 out;
  tape.eval(p, std::span<double>(out.data(), 3));
  return out;
}

Mat3 eval_mat(const ExprMat3& m, const Binding& p) {
  std::array<Expr, 9> flat;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) flat[3 * r + c] = m[r][c];
  }
  const auto v = Tape(flat).eval(p);
  Mat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(r, c) = v[3 * r + c];
  }
  return out;
}

Expr dot(const ExprVec3& a, const ExprVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Expr bilinear(const ExprMat3& m, const ExprVec3& a, const ExprVec3& b) {
  return dot(a, mat_vec(m, b));
}

ExprVec3 mat_vec(const ExprMat3& m, const ExprVec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

ExprMat3 mat_mul(const ExprMat3& a, const ExprMat3& b) {
  ExprMat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c];
    }
  }
  return out;
}

ExprMat3 transpose(const ExprMat3& m) {
  ExprMat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out[r][c] = m[c][r];
  }
  return out;
}

Expr determinant(const ExprMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

namespace {

// cofactor(r, c) of m, i.e. (-1)^{r+c} times the (r, c) minor.
Expr cofactor(const ExprMat3& m, int r, int c) {
  const int r1 = (r + 1) % 3;
  const int r2 = (r + 2) % 3;
  const int c1 = (c + 1) % 3;
  const int c2 = (c + 2) % 3;
  return m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
}

}  // namespace

ExprMat3 inverse(const ExprMat3& m) {
  const Expr inv_det = Expr(1.0) / determinant(m);
  ExprMat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out[r][c] = cofactor(m, c, r) * inv_det;
  }
  return out;
}

ExprMat3 symmetric_inverse(const ExprMat3& m) {
  const Expr inv_det = Expr(1.0) / determinant(m);
  ExprMat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = r; c < 3; ++c) {
      out[r][c] = cofactor(m, c, r) * inv_det;
      out[c][r] = out[r][c];
    }
  }
  return out;
}

ExprVec3 column(const ExprMat3& m, int i) { return {m[0][i], m[1][i], m[2][i]}; }

ExprVec3 cross(const ExprVec3& a, const ExprVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace ashgeo
