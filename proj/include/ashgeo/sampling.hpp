#pragma once

// Random inputs for property checks: vectors, rotations, SPD matrices and
// Expr-valued metrics and fields that are smooth and non-degenerate on the
// box [-1, 1]^3 (and |t| < 1 where time enters).

#include "ashgeo/fields.hpp"
#include "ashgeo/geometry.hpp"
#include "ashgeo/rng.hpp"

namespace ashgeo {

Vec3 random_vector(SplitMix64& rng, double scale = 1.0);
/// Uniformly distributed rotation (unit quaternion method).
Mat3 random_rotation(SplitMix64& rng);
/// Symmetric positive definite with eigenvalues in [min_eig, max_eig].
Mat3 random_spd(SplitMix64& rng, double min_eig = 0.1, double max_eig = 10.0);
/// Invertible matrix with positive determinant.
Mat3 random_oriented_frame(SplitMix64& rng);

/// Chart box used with the random fields below.
Chart random_field_chart();

/// q = c I + B^T B with B built from affine and trigonometric terms, hence
/// symmetric positive definite everywhere.
SliceMetric random_metric(SplitMix64& rng);
/// Polynomial and trigonometric components.
VecField random_vector_field(SplitMix64& rng);
/// W = Q^{-1} K for a random symmetric K, so K_ab = q_bc W^c_a is symmetric.
EndoField random_symmetric_weingarten(SplitMix64& rng, const SliceMetric& q);
/// Random lapse and time-dependent spatial metric over random_field_chart().
SpacetimeSplit random_split(SplitMix64& rng);

}  // namespace ashgeo
