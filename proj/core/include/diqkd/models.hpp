#pragma once

#include <array>

#include "diqkd/entropy.hpp"
#include "diqkd/tradeoff.hpp"

// Channel models: white noise on a maximally entangled pair, and a
// partially entangled state measured with lossy detectors whose
// nondetections are binned to +1.

namespace diqkd {

struct Implementation {
  double theta = 1.5707963267948966;  ///< |psi> = cos(theta/2)|00> + sin(theta/2)|11>
  std::array<double, 2> phiA{0.0, 1.5707963267948966};
  std::array<double, 3> phiB{0.7853981633974483, -0.7853981633974483, 0.0};
  double v = 1.0;    ///< visibility
  double eta = 1.0;  ///< detection efficiency

  /// Ideal CHSH angles on the maximally entangled state.
  static Implementation ideal(double v = 1.0, double eta = 1.0);
  void validate() const;
};

/// Joint key probabilities p(a, b), a in {+1, -1} (rows), b in {+1, -1, none}.
using KeyTable = std::array<std::array<double, 3>, 2>;

struct Statistics {
  double S = 0.0;
  double a1 = 0.0;
  KeyTable key_joint{};
  double H_A_given_B = 0.0;

  [[nodiscard]] BellPoint bell_point() const { return {S, a1}; }
};

/// Correlators of cos(phi) Z + sin(phi) X on the noisy state, no losses.
struct QubitCorrelators {
  double ab = 0.0;
  double a = 0.0;
  double b = 0.0;
};
QubitCorrelators correlators(const Implementation& impl, double phi_a, double phi_b);

/// H(A|B) of a joint table, in bits.
double conditional_entropy(const KeyTable& p);

Statistics detection_stats(const Implementation& impl, NoiseParam q);

struct WhiteNoiseStats {
  double S = 0.0;
  double H_cond = 0.0;
  double sift = 0.0;
};

/// S = 2 sqrt2 (1 - 2 delta), H = h(q + delta (1 - 2q)), sift = p'^2 + (1-p')^2.
WhiteNoiseStats white_noise_stats(double delta, NoiseParam q, double p_prime);

/// a1^2 + S^2/4 <= 2 + 1e-12.
bool quantum_boundary(BellPoint point);

}  // namespace diqkd
