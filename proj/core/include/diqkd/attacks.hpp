#pragma once

#include "diqkd/entropy.hpp"
#include "diqkd/keyrate.hpp"
#include "diqkd/models.hpp"
#include "diqkd/tradeoff.hpp"

// Explicit eavesdropping strategies, giving upper bounds on the key rate.

namespace diqkd {

struct TwoBasisAttack {
  double entropy = 0.0;  ///< average of H(A1^q|E) and H(A2^q|E)
  double E = 0.0;        ///< BB84 attack parameter of the mixed-in strategy
  double x_star = 0.0;
  double weight = 1.0;   ///< weight of the BB84 strategy in the mixture
};

/// x* in (1/sqrt2, 1) with h(q) + f_q'(x*)(x* - 1/sqrt2) = f_q(x*).
double tangency_point(NoiseParam q);

/// fbar_q(x): f_q(x) for x >= x*, the tangent from (1/sqrt2, h(q)) below.
double f_bar(NoiseParam q, double x);

/// Mixture of the symmetric BB84 attack with a deterministic strategy at S = 2.
TwoBasisAttack two_basis_attack(NoiseParam q, double S);

struct BiasAttack {
  double entropy = 0.0;          ///< from the explicit cq state
  double entropy_formula = 0.0;  ///< g_q at (a1, sqrt(S^2/4 - 1))
  double theta = 0.0;
  double phiB = 0.0;
  double overlap = 0.0;  ///< <psi0|psi1>
  double S = 0.0;        ///< reproduced by the attack
  double a1 = 0.0;
};

/// Attack reaching the bias bound: cos(theta) = <A1>, sin(theta) <psi0|psi1> =
/// sqrt(S^2/4 - 1), cos(phiB/2) = 2/S.
BiasAttack bias_attack(NoiseParam q, BellPoint point);

/// Attack entropy minus H(A|B) for the white-noise two-basis protocol.
double conjectured_rate_upper_bound(double delta, const ProtocolConfig& config);

/// Same for the bias protocol, using the conjectured envelope.
double conjectured_rate_upper_bound(const Implementation& impl, NoiseParam q);

}  // namespace diqkd
