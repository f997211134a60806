#include "diqkd/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"

namespace diqkd {

double qubit_bound_chsh(double S) { return 1.0 - phi(chsh_corr_bound(S)); }

double qubit_bound_asym(NoiseParam q, double alpha, double S_alpha) {
  return f_q(q, asym_chsh_corr_bound(alpha, S_alpha));
}

double qubit_bound_bias(NoiseParam q, BellPoint point) {
  if (!(std::abs(point.a1) <= 1.0 + kBoundaryTol)) {
    throw DomainError("qubit_bound_bias: |a1|=" + std::to_string(point.a1) + " > 1");
  }
  if (!point.in_quantum_set(1e-9)) {
    throw BoundaryViolation("qubit_bound_bias: a1^2 + S^2/4 = " +
                            std::to_string(point.a1 * point.a1 + point.S * point.S / 4.0) +
                            " exceeds 2");
  }
  const double z = std::min(std::abs(point.a1), 1.0);
  double x = chsh_corr_bound(point.S);
  // Clip tiny excursions past the quantum boundary from rounding.
  x = std::min(x, std::sqrt(std::max(0.0, 1.0 - z * z)));
  return g_q(q, z, x);
}

TwoBasisValue qubit_bound_two_basis(NoiseParam q, double p, double S) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("qubit_bound_two_basis: p outside [0, 1]");
  // E_p = E_{1-p}: the sign of 2p - 1 is absorbed by Delta.
  const double pp = std::max(p, 1.0 - p);
  double e2 = 0.0;
  bool certified = true;
  if (pp == 1.0) {
    e2 = std::pow(chsh_corr_bound(S), 2);
  } else if (pp == 0.5) {
    e2 = two_basis_bound_analytic(S);
  } else {
    e2 = two_basis_bound_numeric(pp, S).value;
    certified = false;
  }
  return {f_q(q, std::sqrt(std::clamp(e2, 0.0, 1.0))), certified};
}

TradeoffCurve::TradeoffCurve(std::vector<Breakpoint> breakpoints)
    : points_(std::move(breakpoints)) {
  if (points_.empty()) throw DomainError("TradeoffCurve: no breakpoints");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].S > points_[i - 1].S)) {
      throw DomainError("TradeoffCurve: breakpoints not strictly increasing");
    }
  }
  // Rounding in the hull construction may leave slope errors of order 1e-12.
  if (!is_convex(1e-9)) throw DomainError("TradeoffCurve: breakpoints not convex");
  if (points_.size() > 1 && points_[1].H < points_[0].H - 1e-12) {
    throw DomainError("TradeoffCurve: breakpoints decreasing");
  }
}

double TradeoffCurve::operator()(double S) const {
  if (S <= points_.front().S) return points_.front().H;
  if (S > points_.back().S + 1e-9) {
    throw DomainError("TradeoffCurve: S=" + std::to_string(S) + " above domain");
  }
  if (S >= points_.back().S) return points_.back().H;
  const auto it = std::upper_bound(points_.begin(), points_.end(), S,
                                   [](double s, const Breakpoint& b) { return s < b.S; });
  const Breakpoint& b = *it;
  const Breakpoint& a = *(it - 1);
  const double t = (S - a.S) / (b.S - a.S);
  return a.H + t * (b.H - a.H);
}

double TradeoffCurve::slope(double S) const {
  if (points_.size() < 2 || S < points_.front().S) return 0.0;
  auto it = std::upper_bound(points_.begin(), points_.end(), S,
                             [](double s, const Breakpoint& b) { return s < b.S; });
  if (it == points_.end()) it = points_.end() - 1;
  const Breakpoint& b = *it;
  const Breakpoint& a = *(it - 1);
  return (b.H - a.H) / (b.S - a.S);
}

bool TradeoffCurve::is_convex(double tol) const {
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double m = (points_[i].H - points_[i - 1].H) / (points_[i].S - points_[i - 1].S);
    if (m < prev - tol) return false;
    prev = m;
  }
  return true;
}

std::vector<Breakpoint> lower_convex_hull(const std::vector<Breakpoint>& sorted) {
  std::vector<Breakpoint> hull;
  hull.reserve(sorted.size());
  for (const Breakpoint& p : sorted) {
    while (hull.size() >= 2) {
      const Breakpoint& a = hull[hull.size() - 2];
      const Breakpoint& b = hull.back();
      // Drop b if it lies on or above the chord a -> p.
      const double cross = (b.H - a.H) * (p.S - a.S) - (p.H - a.H) * (b.S - a.S);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

TradeoffCurve convexify_1d(const std::function<double(double)>& bound,
                           double s_min, double s_max, int n) {
  if (n < 1) throw DomainError("convexify_1d: need at least one subdivision");
  if (!(s_max > s_min)) throw DomainError("convexify_1d: empty domain");
  const double h = (s_max - s_min) / n;
  std::vector<double> raw(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double S = j == n ? s_max : s_min + h * j;
    try {
      raw[j] = bound(S);
    } catch (const DomainError& e) {
      throw DomainError("convexify_1d: evaluation failed at S=" + std::to_string(S) +
                        ": " + e.what());
    }
  }
  // Cell [S_j, S_{j+1}] gets the value at S_j; each vertex takes the
  // minimum over the cells that contain it.
  std::vector<Breakpoint> vertices(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double S = j == n ? s_max : s_min + h * j;
    double v = j < n ? raw[j] : raw[n - 1];
    if (j > 0) v = std::min(v, raw[j - 1]);
    vertices[j] = {S, v};
  }
  return TradeoffCurve(lower_convex_hull(vertices));
}

}  // namespace diqkd
