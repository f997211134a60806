#pragma once

// Scalar entropy functions and the BB84-type qubit bounds on H(A1^q|E).
// All entropies are in bits.

namespace diqkd {

/// Flip probability of noisy preprocessing, 0 <= q <= 1/2.
class NoiseParam {
 public:
  constexpr NoiseParam() = default;
  explicit NoiseParam(double q);

  [[nodiscard]] constexpr double value() const noexcept { return q_; }
  /// 1 - 2q.
  [[nodiscard]] constexpr double contrast() const noexcept { return 1.0 - 2.0 * q_; }

 private:
  double q_ = 0.0;
};

inline constexpr double kBoundaryTol = 1e-12;

double binary_entropy(double x);

/// phi(x) = h(1/2 + x/2). Even in x.
double phi(double x);

/// d phi / dx = -atanh(x) / ln 2. Diverges at |x| = 1.
double phi_slope(double x);

/// phi(x + d) - phi(x), accurate for small d.
double phi_difference(double x, double d);

/// BB84 bound with noisy preprocessing:
///   f_q(x) = 1 + phi(sqrt((1-2q)^2 + 4q(1-q)x^2)) - phi(x).
/// Nondecreasing in |x|, f_q(0) = h(q), f_q(1) = 1.
double f_q(NoiseParam q, double x);

/// f_q(x) - h(q), keeping relative precision as q -> 1/2 where both sides
/// approach 1.
double f_q_excess(NoiseParam q, double x);

/// Analytic df_q/dx. The slope grows like -(1-2q)^2 ln(1-|x|) / (2 ln 2)
/// near |x| = 1, so inputs with |x| > 1 - 1e-9 are evaluated at
/// sign(x) * (1 - 1e-9).
double f_q_slope(NoiseParam q, double x);

/// BB84 bound with preprocessing and bias, z = |<A1>|, x = |<Abar1 B>|.
/// Requires z^2 + x^2 <= 1.
double g_q(NoiseParam q, double z, double x);

struct GqGradient {
  double dz = 0.0;
  /// (d g_q / dx) / x, finite as x -> 0.
  double dx_over_x = 0.0;
};

/// Partial derivatives of g_q. Undefined where R_- = 0 or z^2 + x^2 = 1.
GqGradient g_q_gradient(NoiseParam q, double z, double x);

/// Two-basis bound f_q(sqrt(p <Abar1 B>^2 + (1-p) <Abar2 B'>^2)).
double two_basis_entropy(NoiseParam q, double p, double corr1, double corr2);

}  // namespace diqkd
