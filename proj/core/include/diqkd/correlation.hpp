#pragma once

#include <cstdint>
#include <vector>

// Device-independent lower bounds on the inaccessible qubit correlators
// |<Abar_x (x) B>| in terms of CHSH-type Bell expectations.

namespace diqkd {

inline constexpr double kTsirelson = 2.8284271247461903;  // 2 sqrt(2)
inline constexpr double kRangeTol = 1e-9;

/// sqrt(S^2/4 - 1) for 2 <= S <= 2 sqrt(2).
double chsh_corr_bound(double S);

/// E_alpha(S_alpha) for S_alpha = alpha(<A1B1> + <A1B2>) + <A2B1> - <A2B2>.
double asym_chsh_corr_bound(double alpha, double S_alpha);

/// Pauli correlations <Z Z>, <Z X>, <X Z>, <X X> of a two-qubit state.
struct PauliCorrelations {
  double zz = 0.0;
  double zx = 0.0;
  double xz = 0.0;
  double xx = 0.0;

  /// Necessary and sufficient conditions for the four values to come from
  /// a two-qubit state.
  [[nodiscard]] bool admissible(double tol = 1e-12) const;
};

/// Variables of the two-basis correlation minimization.
struct MinimizerPoint {
  double lambda = 0.0;
  double mu = 0.0;
  double c = 1.0;
  double s = 0.0;
  double delta = 0.0;

  [[nodiscard]] bool feasible(double S, double tol = 1e-12) const;
  /// s^2 lambda^2 + c^2 mu^2 + 2(2p-1) s c lambda mu Delta.
  [[nodiscard]] double objective(double p) const;
};

/// Roots of 4x(2-x) + 2(S^2+2) + S(x-5) sqrt(2(1+x)) = 0 inside
/// |x| <= (S/4) sqrt(8-S^2). Obtained by squaring to a quartic, solving
/// through the companion matrix and keeping the roots of the unsquared
/// equation. Sorted ascending.
std::vector<double> two_basis_stationary_points(double S);

/// Smallest admissible stationary point. Requires 2 < S <= 2 sqrt(2).
double solve_quartic_in_range(double S);

/// E_{1/2}(S)^2 in closed form (modulo the quartic root).
double two_basis_bound_analytic(double S);

struct NumericBoundOptions {
  int starts = 64;
  std::uint64_t seed = 0x5eed5eedULL;
  int max_iterations = 4000;
};

struct NumericBound {
  double value = 0.0;  ///< best objective found (E_p(S)^2)
  MinimizerPoint point;
  bool certified = false;  ///< multistart search: never certified
};

/// Multistart local minimization of the two-basis objective for arbitrary p.
/// Gives an upper estimate of the true minimum: numerically tight, not a
/// certified lower bound.
NumericBound two_basis_bound_numeric(double p, double S,
                                     const NumericBoundOptions& opts = {});

}  // namespace diqkd
