#pragma once

#include "diqkd/certify.hpp"
#include "diqkd/entropy.hpp"
#include "diqkd/tradeoff.hpp"

// Convex envelope of the bias bound g~_q(|<A1>|, S) and certified affine
// lower bounds on it.

namespace diqkd {

/// Certification domain [0, 1] x [2, 2 sqrt 2] in (|<A1>|, S).
Rect bias_domain();

/// Lower value of the bias bound at a rectangle's lower corner, nullopt
/// outside the quantum set.
CornerBound bias_corner_bound(NoiseParam q);

struct EnvelopeValue {
  double value = 0.0;
  /// Weight on (1, 2) in the decomposition and the second point.
  double t = 0.0;
  BellPoint partner;
  /// Tangent plane at the input point (not yet certified).
  AffineBound tangent;
};

/// Two-point decomposition along the ray from (1, 2) through (|a1|, S),
/// minimized over the mixing weight. S below 2 is raised to 2.
EnvelopeValue conjectured_envelope_bias(NoiseParam q, BellPoint point);

struct CertifyOptions {
  /// Target precision. With `fit_budget`, a smaller epsilon is never
  /// attempted than the one predicted to fit the leaf budget.
  double epsilon = 1e-8;
  /// Leaf counts grow like 1/epsilon; probe at coarse precision and skip
  /// targets predicted to exhaust the budget.
  bool fit_budget = true;
  /// Give up on the target and retry with epsilon times this factor.
  double epsilon_growth = 10.0;
  double epsilon_max = 1e-3;
  CertifyLimits limits{};
};

struct CertifiedValue {
  /// beta + alpha . (|a1|, S) - achieved epsilon; only meaningful if certified.
  double value = 0.0;
  double conjectured = 0.0;
  AffineBound bound;
  bool certified = false;
};

CertifiedValue certified_envelope_bias(NoiseParam q, BellPoint point,
                                       const CertifyOptions& opts = {});

/// Certifies an explicit plane over the bias domain.
AffineBound certify_bias_plane(NoiseParam q, AffineBound plane,
                               const CertifyLimits& limits = {},
                               RectCovering* covering = nullptr);

}  // namespace diqkd
