#include "diqkd/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diqkd/bias_envelope.hpp"
#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/optimize.hpp"

namespace diqkd {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// Entropy in bits of a 2x2 real symmetric block [[a, c], [c, b]] given its
// unnormalized eigenvalues.
double block_entropy(double a, double b, double c) {
  const double m = 0.5 * (a + b);
  const double r = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
  double H = 0.0;
  for (const double lam : {m + r, m - r}) {
    if (lam > 0.0) H -= lam * std::log2(lam);
  }
  return H;
}

}  // namespace

double tangency_point(NoiseParam q) {
  const auto F = [&](double x) { return f_q_slope(q, x) * (x - kInvSqrt2) - f_q_excess(q, x); };
  const double lo = kInvSqrt2 + 1e-9;
  const double hi = 1.0 - 1e-12;
  try {
    return opt::bisect(F, lo, hi, 1e-12);
  } catch (const SearchError&) {
    throw SearchError("tangency_point: no sign change for q=" + std::to_string(q.value()));
  }
}

double f_bar(NoiseParam q, double x) {
  x = std::abs(x);
  const double xs = tangency_point(q);
  if (x >= xs) return f_q(q, x);
  return binary_entropy(q.value()) + f_q_slope(q, xs) * (x - kInvSqrt2);
}

namespace {

// fbar_q(x) - h(q) for the attack at x = S / sqrt8.
double attack_excess(NoiseParam q, double x, double x_star, double* weight) {
  if (x >= x_star) {
    *weight = 1.0;
    return f_q_excess(q, x);
  }
  *weight = (x - kInvSqrt2) / (x_star - kInvSqrt2);
  return f_q_slope(q, x_star) * (x - kInvSqrt2);
}

}  // namespace

TwoBasisAttack two_basis_attack(NoiseParam q, double S) {
  if (!(S >= 2.0 - kRangeTol && S <= kTsirelson + kRangeTol)) {
    throw DomainError("two_basis_attack: S outside [2, 2 sqrt 2]");
  }
  TwoBasisAttack a;
  a.x_star = tangency_point(q);
  const double x = std::clamp(S, 2.0, kTsirelson) / kTsirelson;
  // Below x* the BB84 attack at E = x* is mixed with the deterministic
  // point x = 1/sqrt2.
  a.entropy = binary_entropy(q.value()) + attack_excess(q, x, a.x_star, &a.weight);
  a.E = x >= a.x_star ? x : a.x_star;
  return a;
}

BiasAttack bias_attack(NoiseParam q, BellPoint point) {
  const double a1 = std::abs(point.a1);
  if (!(a1 <= 1.0 + kBoundaryTol)) throw DomainError("bias_attack: |a1| > 1");
  if (!(point.S >= 2.0 - kRangeTol && point.S <= kTsirelson + kRangeTol)) {
    throw DomainError("bias_attack: S outside [2, 2 sqrt 2]");
  }
  if (!point.in_quantum_set(1e-9)) throw BoundaryViolation("bias_attack: outside the quantum set");
  const double S = std::clamp(point.S, 2.0, kTsirelson);

  BiasAttack at;
  at.theta = std::acos(std::min(a1, 1.0));
  at.phiB = 2.0 * std::acos(2.0 / S);
  const double X = chsh_corr_bound(S);
  const double st = std::sin(at.theta);
  at.overlap = st > 0.0 ? std::min(X / st, 1.0) : 1.0;

  // Reproduced statistics: <Z x Z> = 1, <X x X> = sin(theta) <psi0|psi1>.
  const double xx = st * at.overlap;
  at.S = 2.0 * std::cos(at.phiB / 2.0) + 2.0 * std::sin(at.phiB / 2.0) * xx;
  at.a1 = std::cos(at.theta);

  // After the flip Eve holds (1-q)c^2 psi0 + q s^2 psi1 next to a = +1 and
  // q c^2 psi0 + (1-q) s^2 psi1 next to a = -1. For alpha psi0 + beta psi1 the
  // spectrum is that of the Gram block [[alpha, F sqrt(alpha beta)], ...].
  const double c2 = std::cos(at.theta / 2.0) * std::cos(at.theta / 2.0);
  const double s2 = 1.0 - c2;
  const double F = at.overlap;
  const double qq = q.value();
  const auto block = [&](double alpha, double beta) {
    return block_entropy(alpha, beta, F * std::sqrt(alpha * beta));
  };
  const double H_joint = block((1.0 - qq) * c2, qq * s2) + block(qq * c2, (1.0 - qq) * s2);
  const double H_eve = block(c2, s2);
  at.entropy = H_joint - H_eve;
  at.entropy_formula = qubit_bound_bias(q, {S, a1});
  return at;
}

double conjectured_rate_upper_bound(double delta, const ProtocolConfig& config) {
  if (sifted_basis_weight(config.p_prime) != 0.5) {
    throw DomainError("conjectured_rate_upper_bound: the attack is defined for p' = 1/2");
  }
  const WhiteNoiseStats ws = white_noise_stats(delta, config.q, config.p_prime);
  const double x = std::clamp(ws.S, 2.0, kTsirelson) / kTsirelson;
  double weight = 1.0;
  const double excess = attack_excess(config.q, x, tangency_point(config.q), &weight);
  // h(q) - H(A|B): the key bit is flipped with probability q + delta (1 - 2q),
  // so both are phi at contrasts Q and Q (1 - 2 delta).
  const double Q = config.q.contrast();
  return ws.sift * (excess - phi_difference(Q, -2.0 * delta * Q));
}

double conjectured_rate_upper_bound(const Implementation& impl, NoiseParam q) {
  return rate_bias(impl, q, RateMode::conjectured).rate;
}

}  // namespace diqkd
