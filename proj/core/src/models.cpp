#include "diqkd/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"

namespace diqkd {

Implementation Implementation::ideal(double v, double eta) {
  Implementation impl;
  impl.v = v;
  impl.eta = eta;
  return impl;
}

void Implementation::validate() const {
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(theta) || !finite(phiA[0]) || !finite(phiA[1]) || !finite(phiB[0]) ||
      !finite(phiB[1]) || !finite(phiB[2])) {
    throw DomainError("Implementation: non-finite angle");
  }
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("Implementation: v outside [0, 1]");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("Implementation: eta outside [0, 1]");
}

QubitCorrelators correlators(const Implementation& impl, double phi_a, double phi_b) {
  const double ct = std::cos(impl.theta);
  const double st = std::sin(impl.theta);
  return {impl.v * (std::cos(phi_a) * std::cos(phi_b) + st * std::sin(phi_a) * std::sin(phi_b)),
          impl.v * ct * std::cos(phi_a), impl.v * ct * std::cos(phi_b)};
}

double conditional_entropy(const KeyTable& p) {
  double H = 0.0;
  for (int b = 0; b < 3; ++b) {
    const double pb = p[0][b] + p[1][b];
    for (int a = 0; a < 2; ++a) {
      if (p[a][b] > 0.0) H -= p[a][b] * std::log2(p[a][b] / pb);
    }
  }
  return H;
}

Statistics detection_stats(const Implementation& impl, NoiseParam q) {
  impl.validate();
  const double eta = impl.eta;
  const double miss = 1.0 - eta;
  const auto binned = [&](int x, int y) {
    const QubitCorrelators c = correlators(impl, impl.phiA[x], impl.phiB[y]);
    return eta * eta * c.ab + eta * miss * (c.a + c.b) + miss * miss;
  };

  Statistics st;
  st.S = binned(0, 0) + binned(0, 1) + binned(1, 0) - binned(1, 1);
  const QubitCorrelators key = correlators(impl, impl.phiA[0], impl.phiB[2]);
  st.a1 = eta * key.a + miss;

  // Before the flip: Alice bins her nondetection to +1, Bob keeps it.
  KeyTable raw{};
  for (int ia = 0; ia < 2; ++ia) {
    const double a = ia == 0 ? 1.0 : -1.0;
    const double pA = 0.5 * (1.0 + a * key.a);
    for (int ib = 0; ib < 2; ++ib) {
      const double b = ib == 0 ? 1.0 : -1.0;
      const double pAB = 0.25 * (1.0 + a * key.a + b * key.b + a * b * key.ab);
      const double pB = 0.5 * (1.0 + b * key.b);
      raw[ia][ib] = eta * (eta * pAB + (ia == 0 ? miss * pB : 0.0));
    }
    raw[ia][2] = miss * (eta * pA + (ia == 0 ? miss : 0.0));
  }
  const double qq = q.value();
  for (int b = 0; b < 3; ++b) {
    st.key_joint[0][b] = (1.0 - qq) * raw[0][b] + qq * raw[1][b];
    st.key_joint[1][b] = qq * raw[0][b] + (1.0 - qq) * raw[1][b];
  }
  st.H_A_given_B = conditional_entropy(st.key_joint);
  return st;
}

WhiteNoiseStats white_noise_stats(double delta, NoiseParam q, double p_prime) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw DomainError("white_noise_stats: delta=" + std::to_string(delta) + " outside [0, 1/2]");
  }
  if (!(p_prime >= 0.0 && p_prime <= 1.0)) {
    throw DomainError("white_noise_stats: basis probability outside [0, 1]");
  }
  const double qq = q.value();
  return {kTsirelson * (1.0 - 2.0 * delta), binary_entropy(qq + delta * (1.0 - 2.0 * qq)),
          p_prime * p_prime + (1.0 - p_prime) * (1.0 - p_prime)};
}

bool quantum_boundary(BellPoint point) { return point.in_quantum_set(1e-12); }

}  // namespace diqkd
