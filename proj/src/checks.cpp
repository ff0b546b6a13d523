#include "ashgeo/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "ashgeo/ashtekar.hpp"
#include "ashgeo/error.hpp"
#include "ashgeo/levi_civita.hpp"
#include "ashgeo/sampling.hpp"
#include "ashgeo/spin.hpp"
#include "ashgeo/vecprod.hpp"

namespace ashgeo {

namespace {

struct Measured {
  double max_error = 0.0;
  int samples = 0;
  bool skipped = false;
  std::string note;

  void add(double err) {
    // NaN must not hide behind max().
    max_error = std::isnan(err) || std::isnan(max_error) ? NAN : std::max(max_error, err);
    ++samples;
  }
  static Measured skip(std::string why) { return {0.0, 0, true, std::move(why)}; }
};

using SuiteFn = std::function<Measured(const Model&, const SuiteOptions&, SplitMix64&)>;

CVec3 cplx(const Vec3& v) { return v.cast<Complex>(); }

// Fields are redrawn every kFieldBatch samples so that a suite sees several
// field configurations without rebuilding symbolic products per point.
constexpr int kFieldBatch = 10;

// -- vector product ---------------------------------------------------------

Measured vecprod_suite(const Model& m, const SuiteOptions& o, SplitMix64& rng,
                       const std::function<double(const Mat3&, SplitMix64&)>& err) {
  Measured r;
  for (int n = 0; n < o.samples; ++n) {
    const Binding p = m.sample(rng);
    r.add(err(m.q.require_positive_definite(p), rng));
  }
  return r;
}

double antisymmetry_error(const Mat3& q, SplitMix64& rng) {
  const Vec3 x = random_vector(rng), y = random_vector(rng);
  return std::max((ivp<double>(q, x, y) + ivp<double>(q, y, x)).norm(), ivp<double>(q, x, x).norm());
}

double cyclicity_error(const Mat3& q, SplitMix64& rng) {
  const Vec3 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
  return std::abs(inner<double>(q, ivp<double>(q, x, y), z) - inner<double>(q, x, ivp<double>(q, y, z)));
}

double triple_error(const Mat3& q, SplitMix64& rng) {
  const Vec3 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
  const Vec3 lhs = ivp<double>(q, x, ivp<double>(q, y, z));
  return (lhs - (inner<double>(q, x, z) * y - inner<double>(q, x, y) * z)).norm();
}

double jacobi_error(const Mat3& q, SplitMix64& rng) {
  const Vec3 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
  auto P = [&](const Vec3& a, const Vec3& b) { return ivp<double>(q, a, b); };
  return (P(x, P(y, z)) + P(y, P(z, x)) + P(z, P(x, y))).norm();
}

double frame_error(const Mat3& q, SplitMix64& rng) {
  const Vec3 x = random_vector(rng), y = random_vector(rng);
  const Frame e = orthonormal_frame(q);
  const Frame rotated(e.matrix() * random_rotation(rng));
  return (ivp_with_frame<double>(rotated, q, x, y) - ivp_with_frame<double>(e, q, x, y)).norm();
}

double hodge_error(const Mat3& q, SplitMix64& rng) {
  const Vec3 x = random_vector(rng), y = random_vector(rng);
  return (ivp<double>(q, x, y) - ivp_hodge<double>(q, x, y)).norm();
}

// -- connections ------------------------------------------------------------

Measured lc_leibniz(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  const LeviCivita lc(m.q);
  const InducedProduct prod(m.q);
  Measured r;
  for (int start = 0; start < o.samples; start += kFieldBatch) {
    const VecField y = random_vector_field(rng);
    const VecField z = random_vector_field(rng);
    const VecField yz = prod(y, z);
    for (int n = start; n < std::min(o.samples, start + kFieldBatch); ++n) {
      const Binding p = m.sample(rng);
      const Mat3 q = m.q.require_positive_definite(p);
      const Vec3 x = random_vector(rng);
      const Vec3 rhs = ivp<double>(q, lc.cov_deriv(x, y, p), z.at(p)) +
                       ivp<double>(q, y.at(p), lc.cov_deriv(x, z, p));
      r.add((lc.cov_deriv(x, yz, p) - rhs).norm());
    }
  }
  return r;
}

// For every beta, draws `fields` random vector fields every kFieldBatch
// points, calls setup(conn, fields) once per batch and the returned
// evaluator once per point.
template <typename Setup>
Measured per_beta_batched(const Model& m, const SuiteOptions& o, SplitMix64& rng, int fields,
                          Setup setup) {
  Measured r;
  for (Complex beta : o.betas) {
    const AshtekarConnection conn(Beta(beta), m.q, m.w);
    for (int start = 0; start < o.samples; start += kFieldBatch) {
      std::vector<VecField> f;
      for (int i = 0; i < fields; ++i) f.push_back(random_vector_field(rng));
      const auto evaluate = setup(conn, f);
      for (int n = start; n < std::min(o.samples, start + kFieldBatch); ++n) {
        r.add(evaluate(m.sample(rng)));
      }
    }
  }
  return r;
}

// The same with a per-point body and nothing prepared.
template <typename Body>
Measured per_beta(const Model& m, const SuiteOptions& o, SplitMix64& rng, int fields, Body body) {
  return per_beta_batched(m, o, rng, fields,
                          [&](const AshtekarConnection& conn, const std::vector<VecField>& f) {
                            return [&body, &conn, f](const Binding& p) { return body(conn, f, p); };
                          });
}

Measured ashtekar_metricity(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_beta(m, o, rng, 2, [&](const AshtekarConnection& conn, const std::vector<VecField>& f,
                                    const Binding& p) {
    const Mat3 q = m.q.require_positive_definite(p);
    const Vec3 x = random_vector(rng);
    const Expr yz = bilinear(m.q.components(), f[0].c, f[1].c);
    const Complex lhs = eval(VecField::constant(x).derivative_of(yz), p);
    const Complex rhs = inner<Complex>(q, conn.deriv(x, f[0], p), cplx(f[1].at(p))) +
                        inner<Complex>(q, cplx(f[0].at(p)), conn.deriv(x, f[1], p));
    return std::abs(lhs - rhs);
  });
}

Measured ashtekar_leibniz(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_beta(m, o, rng, 2, [&](const AshtekarConnection& conn, const std::vector<VecField>& f,
                                    const Binding& p) {
    const Mat3 q = m.q.require_positive_definite(p);
    const Vec3 x = random_vector(rng);
    const VecField yz = conn.product()(f[0], f[1]);
    const CVec3 lhs = conn.deriv(x, yz, p);
    const CVec3 rhs = ivp<Complex>(q, conn.deriv(x, f[0], p), cplx(f[1].at(p))) +
                      ivp<Complex>(q, cplx(f[0].at(p)), conn.deriv(x, f[1], p));
    return (lhs - rhs).norm();
  });
}

Measured torsion_dual(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_beta(m, o, rng, 2, [](const AshtekarConnection& conn, const std::vector<VecField>& f,
                                   const Binding& p) {
    return (conn.torsion(f[0], f[1], p) - conn.torsion_closed(f[0].at(p), f[1].at(p), p)).norm();
  });
}

Measured curvature_dual(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_beta_batched(m, o, rng, 3, [](const AshtekarConnection& conn, const std::vector<VecField>& f) {
    return [probe = CurvatureProbe(conn, f[0], f[1], f[2])](const Binding& p) {
      return (probe.definitional(p) - probe.closed(p)).norm();
    };
  });
}

Measured curvature_symmetries(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_beta_batched(m, o, rng, 4, [&](const AshtekarConnection& conn, const std::vector<VecField>& f) {
    return [&m, f, xyz = CurvatureProbe(conn, f[0], f[1], f[2]),
            yxz = CurvatureProbe(conn, f[1], f[0], f[2]),
            xyv = CurvatureProbe(conn, f[0], f[1], f[3])](const Binding& p) {
      const Mat3 q = m.q.require_positive_definite(p);
      const CVec3 r = xyz.definitional(p);
      const double anti = (r + yxz.definitional(p)).norm();
      const Complex a = inner<Complex>(q, r, cplx(f[3].at(p)));
      const Complex b = inner<Complex>(q, xyv.definitional(p), cplx(f[2].at(p)));
      return std::max(anti, std::abs(a + b));
    };
  });
}

// -- hypersurface -----------------------------------------------------------

template <typename Body>
Measured per_spacetime_point(const Model& m, const SuiteOptions& o, SplitMix64& rng, Body body) {
  if (!m.split) return Measured::skip("model has no spacetime");
  const SpacetimeConnection conn(*m.split);
  Measured r;
  for (int n = 0; n < o.samples; ++n) r.add(body(conn, m.split->chart().sample(rng)));
  return r;
}

Measured tangency(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_spacetime_point(m, o, rng, [&](const SpacetimeConnection& conn, const Binding& p) {
    Vec4 x;
    x << 0.0, random_vector(rng);
    const Vec4 w = conn.weingarten4(x, p);
    return std::abs(spacetime_inner(*m.split, w, unit_normal_at(*m.split, p), p));
  });
}

Mat3 k_from_conn(const SpacetimeConnection& conn, const Binding& p) {
  Mat3 w;
  for (int a = 0; a < 3; ++a) w.col(a) = conn.weingarten(Vec3(Vec3::Unit(a)), p);
  return (conn.split().spatial_metric().at(p) * w).transpose();
}

Measured k_symmetry(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_spacetime_point(m, o, rng, [](const SpacetimeConnection& conn, const Binding& p) {
    const Mat3 k = k_from_conn(conn, p);
    return (k - k.transpose()).cwiseAbs().maxCoeff();
  });
}

Measured k_dual(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_spacetime_point(m, o, rng, [&](const SpacetimeConnection& conn, const Binding& p) {
    const Mat3 k = k_from_conn(conn, p);
    const Mat3 w = weingarten_from_K(m.split->spatial_metric().at(p), k);
    Mat3 w_direct;
    for (int a = 0; a < 3; ++a) w_direct.col(a) = conn.weingarten(Vec3(Vec3::Unit(a)), p);
    return std::max((k - second_fundamental_form_split(*m.split, p)).cwiseAbs().maxCoeff(),
                    (w - w_direct).cwiseAbs().maxCoeff());
  });
}

// -- FRW --------------------------------------------------------------------

Measured frw_weingarten(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  if (!m.frw) return Measured::skip("model is not FRW");
  return per_spacetime_point(m, o, rng, [&](const SpacetimeConnection& conn, const Binding& p) {
    const double h = hubble(*m.frw, p.get(time_id()));
    const Vec3 x = random_vector(rng);
    return (conn.weingarten(x, p) - h * x).norm();
  });
}

Measured frw_torsion(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  if (!m.frw) return Measured::skip("model is not FRW");
  return per_beta(m, o, rng, 2, [&](const AshtekarConnection& conn, const std::vector<VecField>& f,
                                    const Binding& p) {
    const FrwOracles ex = frw_oracles(*m.frw, conn.beta(), m.time, f[0].at(p), f[1].at(p), Vec3::Zero(), p);
    return std::max((conn.torsion(f[0], f[1], p) - ex.T).norm(),
                    (conn.weingarten().at(p) - ex.W).cwiseAbs().maxCoeff());
  });
}

Measured frw_curvature(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  if (!m.frw) return Measured::skip("model is not FRW");
  return per_beta_batched(m, o, rng, 3, [&](const AshtekarConnection& conn, const std::vector<VecField>& f) {
    return [&m, f, beta = conn.beta(), probe = CurvatureProbe(conn, f[0], f[1], f[2])](const Binding& p) {
      const FrwOracles ex =
          frw_oracles(*m.frw, beta, m.time, f[0].at(p), f[1].at(p), f[2].at(p), p);
      return (probe.definitional(p) - ex.R).norm();
    };
  });
}

Measured constant_curvature(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  if (!m.frw) return Measured::skip("model is not FRW");
  const LeviCivita lc(m.frw->reference);
  const double kappa = m.frw->kappa;
  Measured r;
  for (int n = 0; n < o.samples; ++n) {
    const Binding p = m.sample(rng);
    const Mat3 q = m.frw->reference.require_positive_definite(p);
    const Vec3 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
    const Vec3 rr = lc.riemann(x, y, z, p);
    const Vec3 expected = kappa * (inner<double>(q, z, y) * x - inner<double>(q, z, x) * y);
    const Vec3 dotted = kappa * ivp<double>(q, z, ivp<double>(q, x, y));
    r.add(std::max((rr - expected).norm(), (rr - dotted).norm()));
  }
  return r;
}

// -- local forms and reconstruction ----------------------------------------

template <typename Body>
Measured per_beta_frame(const Model& m, const SuiteOptions& o, SplitMix64& rng, Body body) {
  Measured r;
  const FrameField e = orthonormal_frame_field(m.q);
  for (Complex beta : o.betas) {
    const LocalFormField form(AshtekarConnection(Beta(beta), m.q, m.w), e);
    for (int n = 0; n < o.samples; ++n) r.add(body(form, beta, m.sample(rng)));
  }
  return r;
}

Measured decomposition(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_beta_frame(m, o, rng, [](const LocalFormField& form, Complex beta, const Binding& p) {
    const LocalLieForm A = form.at(p);
    const auto [gamma, k] = form.parts(p);
    const PhysicsComponents pc = form.physics_components(p);
    double err = 0.0;
    for (int a = 0; a < 3; ++a) {
      err = std::max(err, (So3Basis::combine(CVec3(pc.A.row(a).transpose())) - A.a[a]).norm());
      err = std::max(err, (A.a[a] - gamma[a].cast<Complex>() - beta * k[a].cast<Complex>()).norm());
    }
    return err;
  });
}

Measured local_form_antisymmetry(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  return per_beta_frame(m, o, rng, [](const LocalFormField& form, Complex, const Binding& p) {
    double err = 0.0;
    for (const CMat3& a : form.at(p).a) err = std::max(err, So3Basis::antisymmetry_residual(a));
    return err;
  });
}

Measured triad_roundtrip(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  Measured r;
  for (int n = 0; n < o.samples; ++n) {
    const Mat3 q = m.q.require_positive_definite(m.sample(rng));
    const Frame e(orthonormal_frame(q).matrix() * random_rotation(rng));
    const Frame back = reconstruct_frame(densitize(e));
    r.add((back.matrix() - e.matrix()).cwiseAbs().maxCoeff());
  }
  return r;
}

Measured weingarten_roundtrip(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  Measured r;
  for (Complex beta : o.betas) {
    for (int n = 0; n < o.samples; ++n) {
      const Binding p = m.sample(rng);
      const Mat3 q = m.q.require_positive_definite(p);
      const Mat3 w = m.w.at(p);
      const BilinearMap b = [&](const Vec3& x, const Vec3& y) {
        return CVec3(beta * cplx(ivp<double>(q, w * x, y)));
      };
      r.add((reconstruct_W(Beta(beta), q, b) - w.cast<Complex>()).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

Measured pipeline(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  // Hand over only E and nabla^A; rebuild q from E, then W and K from the
  // difference nabla^A - nabla.
  const DensitizedTriadField E = densitize(orthonormal_frame_field(m.q));
  const SliceMetric q_rec = metric_from_frame(reconstruct_frame(E));
  const LeviCivita lc_rec(q_rec);
  Measured r;
  for (Complex beta : o.betas) {
    const AshtekarConnection conn(Beta(beta), m.q, m.w);
    for (int n = 0; n < o.samples; ++n) {
      const Binding p = m.sample(rng);
      const Mat3 q = q_rec.require_positive_definite(p);
      const BilinearMap b = [&](const Vec3& x, const Vec3& y) {
        const VecField yf = VecField::constant(y);
        return CVec3(conn.deriv(x, yf, p) - cplx(lc_rec.cov_deriv(x, yf, p)));
      };
      const CMat3 k_rec = (q.cast<Complex>() * reconstruct_W(Beta(beta), q, b)).transpose();
      const Mat3 q_ref = m.q.at(p);
      const Mat3 k_ref = (q_ref * m.w.at(p)).transpose();
      r.add(std::max((q - q_ref).cwiseAbs().maxCoeff(),
                     (k_rec - k_ref.cast<Complex>()).cwiseAbs().maxCoeff()));
    }
  }
  return r;
}

// -- spin -------------------------------------------------------------------

Measured exp_cover(const Model&, const SuiteOptions& o, SplitMix64& rng) {
  Measured r;
  for (int n = 0; n < o.samples; ++n) {
    const CVec3 xi = cplx(random_vector(rng, 2.0));
    const double t = rng.uniform();
    const Mat2c u = exp_su2(CVec3(t * xi));
    const double lie = (covering_map(u) - exp_so3(CVec3(t * xi)).real()).norm();
    const double kernel = (covering_map(-u) - covering_map(u)).norm();
    r.add(std::max(lie, kernel));
  }
  return r;
}

constexpr int kHolonomyPaths = 10;
constexpr int kHolonomySteps = 200;

// Closed-ish random loop around a point well inside the chart.
PathSpec random_path(const Model& m, SplitMix64& rng) {
  const Binding centre = m.chart.sample_slice(rng, m.time, 0.3);
  std::array<Expr, 3> c;
  const Expr s = Expr::var(path_parameter());
  for (int a = 0; a < 3; ++a) {
    const Interval iv = *m.chart.interval(kCoordNames[a]);
    const double amp = 0.15 * iv.width() * rng.uniform(0.3, 1.0);
    const double freq = 2.0 * std::numbers::pi * static_cast<double>(1 + rng.below(2));
    c[a] = Expr(centre.get(coord_id(a))) + Expr(amp) * sin(Expr(freq) * s + Expr(rng.uniform(0, 6.28)));
  }
  return PathSpec{c, kHolonomySteps};
}

Measured double_cover(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  Measured r;
  const FrameField e = orthonormal_frame_field(m.q);
  const HolonomyDomain domain{m.chart, Binding{}.set(time_id(), m.time)};
  for (Complex beta : o.betas) {
    const LieFormField form =
        ashtekar_form(LocalFormField(AshtekarConnection(Beta(beta), m.q, m.w), e));
    for (int n = 0; n < kHolonomyPaths; ++n) {
      const PathSpec path = random_path(m, rng);
      const CMat3 h = holonomy_so3(form, path, domain);
      const Mat2c u = holonomy_su2(form, path, domain);
      r.add((covering_map_complex(u) - h).norm());
    }
  }
  return r;
}

Measured holonomy_reversal(const Model& m, const SuiteOptions& o, SplitMix64& rng) {
  Measured r;
  const FrameField e = orthonormal_frame_field(m.q);
  const HolonomyDomain domain{m.chart, Binding{}.set(time_id(), m.time)};
  for (Complex beta : o.betas) {
    const LieFormField form =
        ashtekar_form(LocalFormField(AshtekarConnection(Beta(beta), m.q, m.w), e));
    for (int n = 0; n < kHolonomyPaths / 2; ++n) {
      const PathSpec path = random_path(m, rng);
      const CMat3 h = holonomy_so3(form, path, domain);
      const CMat3 back = holonomy_so3(form, path.reversed(), domain);
      r.add((h * back - CMat3::Identity()).norm());
    }
  }
  return r;
}

struct Entry {
  SuiteInfo info;
  SuiteFn fn;
};

SuiteFn vp(double (*err)(const Mat3&, SplitMix64&)) {
  return [err](const Model& m, const SuiteOptions& o, SplitMix64& rng) {
    return vecprod_suite(m, o, rng, err);
  };
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{"antisymmetry", 1e-9, "X.Y = -Y.X and X.X = 0"}, vp(antisymmetry_error)},
      {{"cyclicity", 1e-9, "<X.Y, Z> = <X, Y.Z>"}, vp(cyclicity_error)},
      {{"triple_product", 1e-9, "X.(Y.Z) = <X,Z>Y - <X,Y>Z"}, vp(triple_error)},
      {{"jacobi", 1e-9, "Jacobi identity for the vector product"}, vp(jacobi_error)},
      {{"frame_independence", 1e-10, "X.Y unchanged under e -> eA, A in SO(3)"}, vp(frame_error)},
      {{"hodge", 1e-10, "frame route agrees with the Hodge dual route"}, vp(hodge_error)},
      {{"leibniz", 1e-8, "Levi-Civita derivative of X.Y obeys the Leibniz rule"}, lc_leibniz},
      {{"metricity", 1e-9, "Ashtekar connection is metric"}, ashtekar_metricity},
      {{"ashtekar_leibniz", 1e-8, "Ashtekar derivative of Y.Z obeys the Leibniz rule"}, ashtekar_leibniz},
      {{"torsion", 1e-8, "torsion: definition against beta(W(X).Y - W(Y).X)"}, torsion_dual},
      {{"curvature", 1e-8, "curvature: definition against the closed form"}, curvature_dual},
      {{"curvature_symmetries", 1e-8, "R^A(X,Y) = -R^A(Y,X) and <R^A(X,Y)Z,V> = -<R^A(X,Y)V,Z>"},
       curvature_symmetries},
      {{"tangency", 1e-10, "<W(X), n> = 0"}, tangency},
      {{"k_symmetry", 1e-9, "K(X,Y) = K(Y,X)"}, k_symmetry},
      {{"k_dual", 1e-9, "K from W against d_t g / (2 sqrt f); W = Q^-1 K"}, k_dual},
      {{"frw_weingarten", 1e-9, "FRW: W = h Id"}, frw_weingarten},
      {{"frw_torsion", 1e-9, "FRW: T^A(X,Y) = 2 beta h X.Y"}, frw_torsion},
      {{"frw_curvature", 1e-8, "FRW: R^A(X,Y)Z = [(beta h)^2 - kappa](X.Y).Z"}, frw_curvature},
      {{"constant_curvature", 1e-8, "FRW reference metric has constant curvature kappa"},
       constant_curvature},
      {{"decomposition", 1e-9, "A_a^i M_i = local form = Gamma_a + beta k_a"}, decomposition},
      {{"local_form_antisymmetry", 1e-10, "local form is so(3)-valued"}, local_form_antisymmetry},
      {{"triad_roundtrip", 1e-12, "e -> E -> e"}, triad_roundtrip},
      {{"weingarten_roundtrip", 1e-9, "W -> beta W(X).Y -> W"}, weingarten_roundtrip},
      {{"pipeline", 1e-8, "(E, Ashtekar connection) -> (q, K)"}, pipeline},
      {{"exp_cover", 1e-8, "lambda(exp(t xi)) = exp(t lambda_* xi) and lambda(-U) = lambda(U)"},
       exp_cover},
      {{"double_cover", 1e-6, "lambda(SU(2) holonomy) = SO(3) holonomy"}, double_cover},
      {{"holonomy_reversal", 1e-7, "holonomy of the reversed path is the inverse"},
       holonomy_reversal},
  };
  return entries;
}

const Entry& find(std::string_view name) {
  for (const auto& e : registry()) {
    if (e.info.name == name) return e;
  }
  throw InvalidArgument("unknown suite '" + std::string(name) + "'");
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const SuiteInfo& suite_info(std::string_view name) { return find(name).info; }

std::uint64_t suite_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return SplitMix64(seed ^ h).next();
}

SuiteResult run_suite(std::string_view name, const Model& model, const SuiteOptions& options,
                      double tolerance) {
  const Entry& e = find(name);
  SplitMix64 rng(suite_seed(options.seed, name));
  const Measured m = e.fn(model, options, rng);
  return SuiteResult{std::string(name), m.max_error, tolerance, m.samples, m.skipped, m.note};
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const Model& model,
                                    const SuiteOptions& options,
                                    const std::map<std::string, double>& tolerances,
                                    unsigned threads) {
  std::vector<std::string> selected = names;
  if (selected.empty()) {
    for (const auto& info : suite_catalog()) selected.emplace_back(info.name);
  }
  std::vector<double> tol;
  for (const auto& n : selected) {
    const auto it = tolerances.find(n);
    tol.push_back(it != tolerances.end() ? it->second : suite_info(n).tolerance);
  }

  std::vector<SuiteResult> results(selected.size());
  std::vector<std::exception_ptr> errors(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      try {
        results[i] = run_suite(selected[i], model, options, tol[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(selected.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace ashgeo
