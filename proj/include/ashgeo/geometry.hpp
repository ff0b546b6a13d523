#pragma once

// Charts, slice metrics, spacetime splits, frames and densitized triads.
//
// Conventions:
//  * The coordinate basis d_1, d_2, d_3 of every chart is positively
//    oriented.
//  * A frame is stored as the 3x3 matrix whose column i holds the coordinate
//    components e_i^a of e(e_i).
//  * det e is taken with respect to the coordinate basis.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ashgeo/fields.hpp"
#include "ashgeo/rng.hpp"

namespace ashgeo {

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return x > lo && x < hi; }
  double width() const noexcept { return hi - lo; }
};

/// Rectangular coordinate patch.
class Chart {
 public:
  Chart(std::vector<std::string> names, std::vector<Interval> box);

  /// Slice chart with coordinates x1, x2, x3.
  static Chart slice(const std::array<Interval, 3>& box);
  /// Spacetime chart with coordinates t, x1, x2, x3.
  static Chart spacetime(Interval time, const std::array<Interval, 3>& box);

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Interval>& box() const noexcept { return box_; }
  std::size_t dimension() const noexcept { return names_.size(); }

  /// Interval of a named coordinate, if the chart has it.
  std::optional<Interval> interval(std::string_view name) const;
  bool has_time() const { return interval(kTimeName).has_value(); }

  /// True when every chart coordinate is bound in p and inside its interval.
  bool contains(const Binding& p) const;
  /// Uniform point in the box shrunk by `margin` (a fraction of each width)
  /// on both sides. Variables outside the chart are left unbound.
  Binding sample(SplitMix64& rng, double margin = 0.05) const;
  /// Same as sample() but only the slice coordinates; `time` is bound to t.
  Binding sample_slice(SplitMix64& rng, double time, double margin = 0.05) const;

 private:
  std::vector<std::string> names_;
  std::vector<Interval> box_;
};

/// Riemannian metric q_ab on a slice chart. Symmetric by construction.
class SliceMetric {
 public:
  /// Requires q[a][b] and q[b][a] to be structurally identical; throws
  /// InvalidArgument otherwise.
  explicit SliceMetric(const ExprMat3& q);

  /// Uses the upper triangle and mirrors it.
  static SliceMetric from_upper(const ExprMat3& q);
  static SliceMetric diagonal(const Expr& q11, const Expr& q22, const Expr& q33);
  static SliceMetric flat();

  const Expr& operator()(int a, int b) const { return impl_->q[a][b]; }
  const ExprMat3& components() const noexcept { return impl_->q; }

  Mat3 at(const Binding& p) const;
  /// Leading principal minors all positive.
  bool positive_definite_at(const Binding& p) const;
  /// Evaluates and throws GeometryError when not positive definite.
  Mat3 require_positive_definite(const Binding& p) const;

  /// factor * q, e.g. the a^2 q of a Friedmann-Robertson-Walker slice.
  SliceMetric scaled(const Expr& factor) const;

 private:
  struct Impl {
    ExprMat3 q;
    Tape tape;
  };
  explicit SliceMetric(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static SliceMetric build(const ExprMat3& q);

  std::shared_ptr<const Impl> impl_;
};

/// Lorentzian metric g = -f(t) dt^2 + g_t on R x Sigma, restricted to a
/// chart with coordinates t, x1, x2, x3.
class SpacetimeSplit {
 public:
  /// Throws InvalidArgument if the lapse depends on a slice coordinate,
  /// g_t is not symmetric, or the chart lacks a time coordinate.
  SpacetimeSplit(Expr lapse, const ExprMat3& g, Chart chart);

  const Expr& lapse() const noexcept { return lapse_; }
  /// g_t as a slice metric that still depends on t.
  const SliceMetric& spatial_metric() const noexcept { return g_; }
  const Chart& chart() const noexcept { return chart_; }
  Interval time_interval() const { return *chart_.interval(kTimeName); }

  /// Throws GeometryError unless f > 0 and g_t is positive definite at p.
  void validate_at(const Binding& p) const;

 private:
  Expr lapse_;
  SliceMetric g_;
  Chart chart_;
};

/// Metric of the Cauchy slice {t0} x Sigma. Throws GeometryError when t0
/// lies outside the time interval.
SliceMetric induce_slice_metric(const SpacetimeSplit& st, double t0);

/// Frame at a point: column i holds e(e_i) in coordinate components.
class Frame {
 public:
  explicit Frame(const Mat3& m) : m_(m) {}
  static Frame identity() { return Frame(Mat3::Identity()); }

  const Mat3& matrix() const noexcept { return m_; }
  Vec3 vector(int i) const { return m_.col(i); }

 private:
  Mat3 m_;
};

/// Densitized frame E = e / det e (tensor density of weight 1).
class DensitizedTriad {
 public:
  explicit DensitizedTriad(const Mat3& m) : m_(m) {}
  const Mat3& matrix() const noexcept { return m_; }

 private:
  Mat3 m_;
};

/// Frame over a whole chart; m[a][i] = e_i^a.
struct FrameField {
  ExprMat3 m;

  Frame at(const Binding& p) const { return Frame(eval_mat(m, p)); }
  VecField vector(int i) const { return {column(m, i)}; }
};

/// Densitized frame field; m[a][i] = E_i^a.
struct DensitizedTriadField {
  ExprMat3 m;

  DensitizedTriad at(const Binding& p) const { return DensitizedTriad(eval_mat(m, p)); }
};

/// Gram-Schmidt on d_1, d_2, d_3 (in that order). The result is oriented
/// and satisfies e^T Q e = I. Throws GeometryError when Q is not positive
/// definite.
Frame orthonormal_frame(const Mat3& q);
Frame orthonormal_frame(const SliceMetric& q, const Binding& p);
/// The same Gram-Schmidt construction carried out on expressions.
FrameField orthonormal_frame_field(const SliceMetric& q);

double frame_det(const Frame& e);
Expr frame_det(const FrameField& e);

/// Throws GeometryError for a singular frame.
DensitizedTriad densitize(const Frame& e);
DensitizedTriadField densitize(const FrameField& e);

/// e = (det E)^{-1/2} E. The sign of det e cannot be recovered from E, so
/// the oriented representative is returned. Throws GeometryError when
/// det E <= 0.
Frame reconstruct_frame(const DensitizedTriad& E);
FrameField reconstruct_frame(const DensitizedTriadField& E);

/// The metric for which e is an isometry: Q = (e e^T)^{-1}.
Mat3 metric_from_frame(const Frame& e);
SliceMetric metric_from_frame(const FrameField& e);

/// Smallest leading principal minor of a symmetric 3x3 matrix.
double min_leading_minor(const Mat3& q);

}  // namespace ashgeo
