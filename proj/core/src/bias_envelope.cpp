#include "diqkd/bias_envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/optimize.hpp"

namespace diqkd {

namespace {

// g~_q in (z, S) coordinates with the boundary clipped, no validation.
double g_tilde(NoiseParam q, double z, double S) {
  z = std::clamp(z, 0.0, 1.0);
  double x = chsh_corr_bound(std::max(S, 2.0));
  x = std::min(x, std::sqrt(std::max(0.0, 1.0 - z * z)));
  return g_q(q, z, x);
}

// d g~ / dS and d g~ / dz at (z, S).
std::array<double, 2> g_tilde_gradient(NoiseParam q, double z, double S) {
  const double x = chsh_corr_bound(S);
  const GqGradient g = g_q_gradient(q, z, x);
  return {g.dz, g.dx_over_x * S / 4.0};
}

// Partners lie on (1, 2) + u (a - 1, S - 2), u >= 1, with mixing weight
// t = 1 - 1/u. Returns the largest u keeping the partner in the domain.
double max_stretch(double a, double S) {
  const double d = a - 1.0;
  const double e = S - 2.0;
  double u = std::numeric_limits<double>::infinity();
  if (d < 0.0) u = 1.0 / (1.0 - a);
  const double A = d * d + e * e / 4.0;
  const double B = 2.0 * d + e;
  // B >= 0: the point sits on the curved boundary (up to rounding), which
  // the ray leaves immediately.
  if (A > 0.0 && B >= 0.0) return 1.0;
  if (A > 0.0) u = std::min(u, -B / A);
  if (!std::isfinite(u) || u <= 1.0) return 1.0;
  return u;
}

AffineBound plane_through(double value, std::array<double, 2> alpha, double a, double S) {
  AffineBound b;
  b.alpha = alpha;
  b.beta = value - alpha[0] * a - alpha[1] * S;
  return b;
}

EnvelopeValue envelope(NoiseParam q, BellPoint point, bool nudge);

}  // namespace

Rect bias_domain() { return Rect{{0.0, 2.0}, {1.0, kTsirelson}}; }

CornerBound bias_corner_bound(NoiseParam q) {
  return [q](double z, double S) -> std::optional<double> {
    if (z * z + S * S / 4.0 > 2.0) return std::nullopt;
    return g_tilde(q, z, S);
  };
}

EnvelopeValue conjectured_envelope_bias(NoiseParam q, BellPoint point) {
  return envelope(q, point, true);
}

namespace {

EnvelopeValue envelope(NoiseParam q, BellPoint point, bool nudge) {
  const double a = std::abs(point.a1);
  if (!(a <= 1.0 + kBoundaryTol)) throw DomainError("conjectured_envelope_bias: |a1| > 1");
  if (!point.in_quantum_set(1e-9)) {
    throw BoundaryViolation("conjectured_envelope_bias: point outside the quantum set");
  }
  const double S = std::clamp(point.S, 2.0, kTsirelson);
  const double hq = binary_entropy(q.value());

  EnvelopeValue out;
  if (S <= 2.0) {
    // g~_q(z, 2) = h(q) for every z: the envelope is the constant h(q).
    out.value = hq;
    out.partner = {2.0, a};
    out.tangent = plane_through(hq, {0.0, 0.0}, a, S);
    return out;
  }

  // The partner moves as 1/(1 - t), so the search runs over its position
  // along the ray rather than over t itself.
  const double umax = max_stretch(a, S);
  const auto u_of = [&](double s) { return 1.0 + s * (umax - 1.0); };
  const auto partner_of = [&](double u) {
    return BellPoint{2.0 + u * (S - 2.0), std::max(1.0 + u * (a - 1.0), 0.0)};
  };
  const auto V = [&](double s) {
    const double u = u_of(s);
    const BellPoint p2 = partner_of(u);
    return (1.0 - 1.0 / u) * hq + g_tilde(q, p2.a1, p2.S) / u;
  };

  // Tangent plane of g~ at the partner, evaluated at (1, 2), minus h(q).
  // dV/du = -F/u^2, so the optimum is a sign change of F; unlike V itself,
  // F is not flat there and pins the partner to rounding precision.
  const auto F = [&](double s) {
    const BellPoint p2 = partner_of(u_of(s));
    const std::array<double, 2> g = g_tilde_gradient(q, p2.a1, p2.S);
    return g_tilde(q, p2.a1, p2.S) + g[0] * (1.0 - p2.a1) + g[1] * (2.0 - p2.S) - hq;
  };

  double t = 0.0;
  double u = 1.0;
  double value = g_tilde(q, a, S);
  bool stationary = false;
  if (umax > 1.0) {
    opt::ScalarMin m = opt::scan_then_golden(V, 0.0, 1.0, 256, 1e-10);
    const double lo = std::max(0.0, m.x - 2.0 / 255.0);
    const double hi = std::min(1.0, m.x + 2.0 / 255.0);
    const double flo = F(lo);
    const double fhi = F(hi);
    if (std::isfinite(flo) && std::isfinite(fhi) && flo * fhi < 0.0) {
      const double s = opt::bisect(F, lo, hi, 1e-16);
      const double vs = V(s);
      if (std::isfinite(vs) && vs <= m.fx + 1e-14) {
        m = {s, std::min(vs, m.fx)};
        stationary = true;
      }
    }
    if (m.fx < value) {
      u = u_of(m.x);
      t = 1.0 - 1.0 / u;
      value = m.fx;
    } else {
      stationary = false;
    }
  }
  out.value = value;
  out.t = t;
  out.partner = t > 0.0 ? partner_of(u) : BellPoint{S, a};

  if (stationary) {
    const std::array<double, 2> grad = g_tilde_gradient(q, out.partner.a1, out.partner.S);
    if (std::isfinite(grad[0]) && std::isfinite(grad[1])) {
      out.tangent = plane_through(g_tilde(q, out.partner.a1, out.partner.S), grad,
                                  out.partner.a1, out.partner.S);
      return out;
    }
  }

  // Tangent: slope in S from the bias bound at the partner, slope in a from
  // the chord to (1, 2, h(q)).
  const double a2 = out.partner.a1;
  const double S2 = out.partner.S;
  std::array<double, 2> grad = g_tilde_gradient(q, a2, S2);
  bool ok = std::isfinite(grad[0]) && std::isfinite(grad[1]);
  if (ok && t > 0.0 && a2 < 1.0) {
    grad[0] = (g_tilde(q, a2, S2) - hq - grad[1] * (S2 - 2.0)) / (a2 - 1.0);
    ok = std::isfinite(grad[0]);
  }
  if (!ok) {
    // On the curved boundary the gradient diverges; use the tangent at a
    // point slightly inside, which stays below a convex envelope.
    if (!nudge) {
      out.tangent = plane_through(value, {0.0, 0.0}, a, S);
      return out;
    }
    const double w = 1e-7;
    const BellPoint inner{S + w * (2.0 - S), a + w * (1.0 - a)};
    out.tangent = envelope(q, inner, false).tangent;
    return out;
  }
  out.tangent = plane_through(value, grad, a, S);
  return out;
}

}  // namespace

AffineBound certify_bias_plane(NoiseParam q, AffineBound plane, const CertifyLimits& limits,
                               RectCovering* covering) {
  return certify_affine(bias_corner_bound(q), bias_domain(), plane, limits, covering);
}

CertifiedValue certified_envelope_bias(NoiseParam q, BellPoint point, const CertifyOptions& opts) {
  const EnvelopeValue env = conjectured_envelope_bias(q, point);
  CertifiedValue out;
  out.conjectured = env.value;
  const double a = std::abs(point.a1);
  const double S = std::clamp(point.S, 2.0, kTsirelson);

  const auto attempt = [&](const AffineBound& tangent) {
    double eps = opts.epsilon;
    if (opts.fit_budget && opts.limits.leaf_budget > 0) {
      const double budget = static_cast<double>(opts.limits.leaf_budget);
      double probe = std::max(opts.epsilon, 1e-3);
      for (;;) {
        AffineBound cand = tangent;
        cand.epsilon = probe;
        const AffineBound r = certify_bias_plane(q, cand, opts.limits);
        if (r.status != CertStatus::certified) break;
        if (static_cast<double>(r.covering_size) >= budget * 1e-3 || probe <= opts.epsilon) {
          const double predicted = probe * static_cast<double>(r.covering_size) / (0.5 * budget);
          eps = std::clamp(predicted, opts.epsilon, opts.epsilon_max);
          break;
        }
        probe /= 10.0;
      }
    }
    AffineBound r;
    for (;;) {
      AffineBound cand = tangent;
      cand.epsilon = eps;
      r = certify_bias_plane(q, cand, opts.limits);
      if (r.status != CertStatus::limit_exceeded || eps >= opts.epsilon_max ||
          !(opts.epsilon_growth > 1.0)) {
        break;
      }
      eps = std::min(eps * opts.epsilon_growth, opts.epsilon_max);
    }
    return r;
  };

  out.bound = attempt(env.tangent);
  // Where the bound has unbounded slope (the top corner and the curved
  // boundary) no finite plane touches it; use tangents taken further inside.
  for (double w : {1e-5, 1e-3, 1e-2}) {
    if (out.bound.status == CertStatus::certified) break;
    const BellPoint inner{S + w * (2.0 - S), a + w * (1.0 - a)};
    const AffineBound r = attempt(conjectured_envelope_bias(q, inner).tangent);
    if (r.status == CertStatus::certified) out.bound = r;
  }
  out.certified = out.bound.status == CertStatus::certified;
  out.value = out.bound(a, S) - std::max(out.bound.achieved_epsilon, 0.0);
  return out;
}

}  // namespace diqkd
