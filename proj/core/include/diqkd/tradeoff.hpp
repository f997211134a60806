#pragma once

#include <functional>
#include <vector>

#include "diqkd/entropy.hpp"

// Qubit tradeoff bounds H >= f(S) and their one-dimensional convexification.

namespace diqkd {

/// Observed pair (S, <A1>).
struct BellPoint {
  double S = 2.0;
  double a1 = 0.0;

  /// a1^2 + S^2/4 <= 2, the boundary of the quantum set in this plane.
  [[nodiscard]] bool in_quantum_set(double tol = 1e-12) const {
    return a1 * a1 + S * S / 4.0 <= 2.0 + tol;
  }
};

/// 1 - phi(sqrt(S^2/4 - 1)). Already convex in S.
double qubit_bound_chsh(double S);

/// f_q(E_alpha(S_alpha)).
double qubit_bound_asym(NoiseParam q, double alpha, double S_alpha);

/// g_q(|a1|, sqrt(S^2/4 - 1)); the point must respect the quantum boundary.
double qubit_bound_bias(NoiseParam q, BellPoint point);

struct TwoBasisValue {
  double entropy = 0.0;
  bool certified = true;  ///< false when the multistart minimizer was used
};

/// f_q(sqrt(E_p(S)^2)). p in {0, 1/2, 1} use closed forms and are certified.
TwoBasisValue qubit_bound_two_basis(NoiseParam q, double p, double S);

struct Breakpoint {
  double S = 0.0;
  double H = 0.0;
};

/// Convex, nondecreasing piecewise-linear lower bound on an entropy in terms
/// of a single Bell expectation.
class TradeoffCurve {
 public:
  TradeoffCurve() = default;
  /// Breakpoints must be strictly increasing in S; the curve is checked for
  /// convexity and monotonicity.
  explicit TradeoffCurve(std::vector<Breakpoint> breakpoints);

  [[nodiscard]] const std::vector<Breakpoint>& breakpoints() const noexcept {
    return points_;
  }
  [[nodiscard]] double s_min() const { return points_.front().S; }
  [[nodiscard]] double s_max() const { return points_.back().S; }

  /// Value at S. Below the domain the curve is flat (the bound is
  /// monotonous, so the value at s_min still applies); above it is an error.
  [[nodiscard]] double operator()(double S) const;

  /// Slope of the segment containing S (right derivative at breakpoints).
  [[nodiscard]] double slope(double S) const;

  [[nodiscard]] bool is_convex(double tol = 0.0) const;

 private:
  std::vector<Breakpoint> points_;
};

/// Lower convex hull of sorted points, one pass (monotone chain).
/// Points strictly above or on a hull segment are dropped.
std::vector<Breakpoint> lower_convex_hull(const std::vector<Breakpoint>& sorted);

/// Discretizes `bound` on n equal cells of [s_min, s_max], assigns each cell
/// the value at its lower vertex, and returns the convex hull of the
/// resulting vertex values.
TradeoffCurve convexify_1d(const std::function<double(double)>& bound,
                           double s_min, double s_max, int n);

}  // namespace diqkd
