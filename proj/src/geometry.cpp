#include "ashgeo/geometry.hpp"

#include <cmath>
#include <unordered_set>

#include "ashgeo/error.hpp"

namespace ashgeo {

// ---------------------------------------------------------------------------
// Chart
// ---------------------------------------------------------------------------

Chart::Chart(std::vector<std::string> names, std::vector<Interval> box)
    : names_(std::move(names)), box_(std::move(box)) {
  if (names_.size() != box_.size()) throw InvalidArgument("chart: names and box differ in size");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!seen.insert(names_[i]).second) {
      throw InvalidArgument("chart: duplicate coordinate '" + names_[i] + "'");
    }
    if (!(box_[i].lo < box_[i].hi)) {
      throw InvalidArgument("chart: empty interval for '" + names_[i] + "'");
    }
  }
}

Chart Chart::slice(const std::array<Interval, 3>& box) {
  return Chart({"x1", "x2", "x3"}, {box[0], box[1], box[2]});
}

Chart Chart::spacetime(Interval time, const std::array<Interval, 3>& box) {
  return Chart({"t", "x1", "x2", "x3"}, {time, box[0], box[1], box[2]});
}

std::optional<Interval> Chart::interval(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return box_[i];
  }
  return std::nullopt;
}

bool Chart::contains(const Binding& p) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const VarId id = intern(names_[i]);
    if (!p.has(id) || !box_[i].contains(p.get(id))) return false;
  }
  return true;
}

Binding Chart::sample(SplitMix64& rng, double margin) const {
  Binding p;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const Interval& iv = box_[i];
    const double m = margin * iv.width();
    p.set(names_[i], rng.uniform(iv.lo + m, iv.hi - m));
  }
  return p;
}

Binding Chart::sample_slice(SplitMix64& rng, double time, double margin) const {
  Binding p;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == kTimeName) continue;
    const Interval& iv = box_[i];
    const double m = margin * iv.width();
    p.set(names_[i], rng.uniform(iv.lo + m, iv.hi - m));
  }
  p.set(time_id(), time);
  return p;
}

// ---------------------------------------------------------------------------
// SliceMetric
// ---------------------------------------------------------------------------

SliceMetric SliceMetric::build(const ExprMat3& q) {
  std::array<Expr, 6> upper{q[0][0], q[0][1], q[0][2], q[1][1], q[1][2], q[2][2]};
  return SliceMetric(std::make_shared<const Impl>(Impl{q, Tape(upper)}));
}

SliceMetric::SliceMetric(const ExprMat3& q) {
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if (!structurally_equal(q[a][b], q[b][a])) {
        throw InvalidArgument("metric is not symmetric: q" + std::to_string(a + 1) +
                              std::to_string(b + 1) + " = " + q[a][b].str() + " but q" +
                              std::to_string(b + 1) + std::to_string(a + 1) + " = " +
                              q[b][a].str());
      }
    }
  }
  impl_ = build(q).impl_;
}

SliceMetric SliceMetric::from_upper(const ExprMat3& q) {
  ExprMat3 s = q;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) s[b][a] = s[a][b];
  }
  return build(s);
}

SliceMetric SliceMetric::diagonal(const Expr& q11, const Expr& q22, const Expr& q33) {
  ExprMat3 q;
  q[0][0] = q11;
  q[1][1] = q22;
  q[2][2] = q33;
  return build(q);
}

SliceMetric SliceMetric::flat() { return diagonal(1.0, 1.0, 1.0); }

Mat3 SliceMetric::at(const Binding& p) const {
  std::array<double, 6> v{};
  impl_->tape.eval(p, v);
  Mat3 m;
  m << v[0], v[1], v[2], v[1], v[3], v[4], v[2], v[4], v[5];
  return m;
}

double min_leading_minor(const Mat3& q) {
  const double m1 = q(0, 0);
  const double m2 = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
  const double m3 = q.determinant();
  return std::min({m1, m2, m3});
}

bool SliceMetric::positive_definite_at(const Binding& p) const {
  return min_leading_minor(at(p)) > 0.0;
}

Mat3 SliceMetric::require_positive_definite(const Binding& p) const {
  Mat3 q = at(p);
  if (!(min_leading_minor(q) > 0.0)) throw GeometryError("metric is not positive definite");
  return q;
}

SliceMetric SliceMetric::scaled(const Expr& factor) const {
  ExprMat3 q;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) q[a][b] = factor * impl_->q[a][b];
  }
  return from_upper(q);
}

// ---------------------------------------------------------------------------
// SpacetimeSplit
// ---------------------------------------------------------------------------

SpacetimeSplit::SpacetimeSplit(Expr lapse, const ExprMat3& g, Chart chart)
    : lapse_(std::move(lapse)), g_(g), chart_(std::move(chart)) {
  for (int a = 0; a < 3; ++a) {
    if (depends_on(lapse_, coord_id(a))) {
      throw InvalidArgument("lapse must depend on t only, found " + std::string(kCoordNames[a]));
    }
  }
  if (!chart_.has_time()) throw InvalidArgument("spacetime chart has no time coordinate");
  for (auto name : kCoordNames) {
    if (!chart_.interval(name)) {
      throw InvalidArgument("spacetime chart lacks coordinate " + std::string(name));
    }
  }
}

void SpacetimeSplit::validate_at(const Binding& p) const {
  if (!(eval(lapse_, p) > 0.0)) throw GeometryError("lapse is not positive");
  g_.require_positive_definite(p);
}

SliceMetric induce_slice_metric(const SpacetimeSplit& st, double t0) {
  if (!st.time_interval().contains(t0)) {
    throw GeometryError("t0 = " + std::to_string(t0) + " outside the time interval");
  }
  ExprMat3 q;
  const auto& g = st.spatial_metric().components();
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) q[a][b] = substitute(g[a][b], time_id(), Expr(t0));
  }
  return SliceMetric::from_upper(q);
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

Frame orthonormal_frame(const Mat3& q) {
  if (!(min_leading_minor(q) > 0.0)) throw GeometryError("metric is not positive definite");
  Mat3 e = Mat3::Zero();
  for (int k = 0; k < 3; ++k) {
    Vec3 v = Vec3::Unit(k);
    // Modified Gram-Schmidt: project out the previous vectors one at a time.
    for (int j = 0; j < k; ++j) v -= (e.col(j).dot(q * v)) * e.col(j);
    const double norm2 = v.dot(q * v);
    if (!(norm2 > 0.0)) throw GeometryError("metric is not positive definite");
    e.col(k) = v / std::sqrt(norm2);
  }
  return Frame(e);
}

Frame orthonormal_frame(const SliceMetric& q, const Binding& p) {
  return orthonormal_frame(q.at(p));
}

FrameField orthonormal_frame_field(const SliceMetric& q) {
  const ExprMat3& Q = q.components();
  std::array<ExprVec3, 3> u;
  for (int k = 0; k < 3; ++k) {
    ExprVec3 v{Expr(0.0), Expr(0.0), Expr(0.0)};
    v[k] = Expr(1.0);
    for (int j = 0; j < k; ++j) {
      const Expr proj = bilinear(Q, u[j], v);
      for (int a = 0; a < 3; ++a) v[a] = v[a] - proj * u[j][a];
    }
    const Expr inv_norm = Expr(1.0) / sqrt(bilinear(Q, v, v));
    for (int a = 0; a < 3; ++a) u[k][a] = v[a] * inv_norm;
  }
  FrameField e;
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) e.m[a][i] = u[i][a];
  }
  return e;
}

double frame_det(const Frame& e) { return e.matrix().determinant(); }

Expr frame_det(const FrameField& e) { return determinant(e.m); }

namespace {

constexpr double kSingular = 1e-12;

}  // namespace

DensitizedTriad densitize(const Frame& e) {
  const double d = frame_det(e);
  if (!(std::abs(d) > kSingular)) throw GeometryError("frame is singular");
  return DensitizedTriad(e.matrix() / d);
}

DensitizedTriadField densitize(const FrameField& e) {
  const Expr inv = Expr(1.0) / frame_det(e);
  DensitizedTriadField E;
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) E.m[a][i] = e.m[a][i] * inv;
  }
  return E;
}

Frame reconstruct_frame(const DensitizedTriad& E) {
  const double d = E.matrix().determinant();
  if (!(d > 0.0)) throw GeometryError("det E must be positive to reconstruct an oriented frame");
  return Frame(E.matrix() / std::sqrt(d));
}

FrameField reconstruct_frame(const DensitizedTriadField& E) {
  const Expr scale = pow(determinant(E.m), Expr(-0.5));
  FrameField e;
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) e.m[a][i] = scale * E.m[a][i];
  }
  return e;
}

Mat3 metric_from_frame(const Frame& e) {
  const double d = frame_det(e);
  if (!(std::abs(d) > kSingular)) throw GeometryError("frame is singular");
  const Mat3 inv = e.matrix().inverse();
  Mat3 q = inv.transpose() * inv;
  return 0.5 * (q + q.transpose());
}

SliceMetric metric_from_frame(const FrameField& e) {
  // q_ab = sum_i (e^-1)^i_a (e^-1)^i_b
  const ExprMat3 inv = inverse(e.m);
  ExprMat3 q;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      q[a][b] = inv[0][a] * inv[0][b] + inv[1][a] * inv[1][b] + inv[2][a] * inv[2][b];
    }
  }
  return SliceMetric::from_upper(q);
}

}  // namespace ashgeo
