#include "diqkd/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "diqkd/errors.hpp"

namespace diqkd {

namespace {

constexpr double kSlopeEdge = 1e-9;

// -p log2 p with the 0 log 0 = 0 convention.
double plogp(double p) {
  if (p <= 0.0) return 0.0;
  return -p * std::log2(p);
}

double clamp_unit(double x, const char* what) {
  if (!(std::abs(x) <= 1.0 + kBoundaryTol)) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(x) +
                      " outside [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

// atanh(r)/r, continuous at r = 0.
double atanh_over(double r) {
  if (std::abs(r) < 1e-6) return 1.0 + r * r / 3.0;
  return std::atanh(r) / r;
}

}  // namespace

NoiseParam::NoiseParam(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 0.5)) {
    throw DomainError("noise parameter q=" + std::to_string(q) +
                      " outside [0, 1/2]");
  }
}

double binary_entropy(double x) {
  if (!(x >= -kBoundaryTol && x <= 1.0 + kBoundaryTol)) {
    throw DomainError("binary_entropy: argument " + std::to_string(x) +
                      " outside [0, 1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  return plogp(x) + plogp(1.0 - x);
}

double phi(double x) {
  x = clamp_unit(x, "phi");
  // Both halves computed directly so that precision is kept near |x| = 1.
  return plogp(0.5 * (1.0 + x)) + plogp(0.5 * (1.0 - x));
}

double phi_slope(double x) {
  x = clamp_unit(x, "phi_slope");
  return -std::atanh(x) / std::numbers::ln2;
}

double phi_difference(double x, double d) {
  // p log p at p + e from its value at p, one term per outcome.
  const auto shift = [](double p, double e) {
    if (!(std::abs(e) < 0.5 * p)) return plogp(p + e) - plogp(p);
    return -(e * std::log2(p + e) + p * std::log1p(e / p) / std::numbers::ln2);
  };
  const double p = 0.5 * (1.0 + x);
  const double m = 0.5 * (1.0 - x);
  return shift(p, 0.5 * d) + shift(m, -0.5 * d);
}

double f_q(NoiseParam q, double x) {
  x = clamp_unit(x, "f_q");
  const double qq = q.value();
  const double contrast = q.contrast();
  const double r = std::sqrt(contrast * contrast + 4.0 * qq * (1.0 - qq) * x * x);
  return 1.0 + phi(std::min(r, 1.0)) - phi(x);
}

double f_q_excess(NoiseParam q, double x) {
  x = std::abs(clamp_unit(x, "f_q_excess"));
  const double Q = q.contrast();
  const double r = std::min(std::sqrt(Q * Q + (1.0 - Q * Q) * x * x), 1.0);
  // r - x without subtracting nearly equal numbers.
  const double d = r + x > 0.0 ? Q * Q * (1.0 - x * x) / (r + x) : 0.0;
  return -phi_difference(0.0, Q) + phi_difference(x, d);
}

double f_q_slope(NoiseParam q, double x) {
  x = clamp_unit(x, "f_q_slope");
  if (std::abs(x) > 1.0 - kSlopeEdge) x = std::copysign(1.0 - kSlopeEdge, x);
  const double qq = q.value();
  const double contrast = q.contrast();
  if (contrast < 0.5 && x != 0.0) {
    // Near q = 1/2 the two terms below nearly cancel. With D = r - |x|,
    // atanh r - atanh |x| = atanh(D / (1 - r |x|)) gives the difference directly.
    const double ax = std::abs(x);
    const double Q2 = contrast * contrast;
    const double r = std::sqrt(Q2 + (1.0 - Q2) * ax * ax);
    const double D = Q2 * (1.0 - ax * ax) / (r + ax);
    const double ar = std::atanh(r);
    const double s = (D * ar - r * std::atanh(D / (1.0 - r * ax))) / r + Q2 * ax * ar / r;
    return std::copysign(s / std::numbers::ln2, x);
  }
  const double w = 4.0 * qq * (1.0 - qq);
  const double r = std::min(std::sqrt(contrast * contrast + w * x * x), 1.0);
  // phi'(r) dr/dx - phi'(x), with phi'(y) = -y atanh(y)/y / ln 2.
  const double term_r = w > 0.0 ? -atanh_over(r) * w * x : 0.0;
  const double term_x = -atanh_over(x) * x;
  return (term_r - term_x) / std::numbers::ln2;
}

double g_q(NoiseParam q, double z, double x) {
  const double r2 = z * z + x * x;
  if (!(r2 <= 1.0 + kBoundaryTol)) {
    throw DomainError("g_q: z^2 + x^2 = " + std::to_string(r2) + " exceeds 1");
  }
  const double Q = q.contrast();
  const double w = (1.0 - Q * Q) * x * x;
  const double rp = std::sqrt((Q + z) * (Q + z) + w);
  const double rm = std::sqrt((Q - z) * (Q - z) + w);
  const double u = std::min(0.5 * (rp + rm), 1.0);
  const double v = std::clamp(0.5 * (rp - rm), -1.0, 1.0);
  return phi(u) + phi(v) - phi(std::min(std::sqrt(r2), 1.0));
}

GqGradient g_q_gradient(NoiseParam q, double z, double x) {
  const double Q = q.contrast();
  const double k = 1.0 - Q * Q;
  const double rp = std::sqrt((Q + z) * (Q + z) + k * x * x);
  const double rm = std::sqrt((Q - z) * (Q - z) + k * x * x);
  const double u = 0.5 * (rp + rm);
  const double v = 0.5 * (rp - rm);
  const double r = std::sqrt(z * z + x * x);
  // phi'(r)/r
  const double dphi_r_over_r = -atanh_over(std::min(r, 1.0)) / std::numbers::ln2;

  GqGradient g;
  if (k == 0.0) {
    // q = 0: g_0(z, x) = phi(z) - phi(r).
    g.dz = phi_slope(z) - dphi_r_over_r * z;
    g.dx_over_x = -dphi_r_over_r;
    return g;
  }
  const double dphi_u = phi_slope(std::min(u, 1.0));
  const double dphi_v = phi_slope(std::clamp(v, -1.0, 1.0));
  const double drp_dz = (Q + z) / rp;
  const double drm_dz = -(Q - z) / rm;
  g.dz = 0.5 * dphi_u * (drp_dz + drm_dz) + 0.5 * dphi_v * (drp_dz - drm_dz) -
         dphi_r_over_r * z;
  g.dx_over_x = 0.5 * k * dphi_u * (1.0 / rp + 1.0 / rm) +
                0.5 * k * dphi_v * (1.0 / rp - 1.0 / rm) - dphi_r_over_r;
  return g;
}

double two_basis_entropy(NoiseParam q, double p, double corr1, double corr2) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("two_basis_entropy: p outside [0, 1]");
  }
  corr1 = clamp_unit(corr1, "two_basis_entropy");
  corr2 = clamp_unit(corr2, "two_basis_entropy");
  return f_q(q, std::sqrt(p * corr1 * corr1 + (1.0 - p) * corr2 * corr2));
}

}  // namespace diqkd
