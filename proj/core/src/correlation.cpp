#include "diqkd/correlation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "diqkd/errors.hpp"
#include "diqkd/optimize.hpp"

namespace diqkd {

namespace {

constexpr double kRootResidualTol = 1e-9;

void require_chsh_range(double S, const char* what) {
  if (!(S >= 2.0 - kRangeTol && S <= kTsirelson + kRangeTol)) {
    throw DomainError(std::string(what) + ": S=" + std::to_string(S) +
                      " outside [2, 2 sqrt 2]");
  }
}

double stationarity(double S, double x) {
  return 4.0 * x * (2.0 - x) + 2.0 * (S * S + 2.0) +
         S * (x - 5.0) * std::sqrt(2.0 * (1.0 + x));
}

// Squared form L(x)^2 - 2 S^2 (x-5)^2 (1+x), L = -4x^2 + 8x + 2S^2 + 4.
// Coefficients from the constant term upwards.
std::array<double, 5> squared_quartic(double S) {
  const double s2 = S * S;
  const double c = 2.0 * s2 + 4.0;
  return {c * c - 50.0 * s2, 2.0 * s2 + 64.0, 32.0 + 2.0 * s2, -64.0 - 2.0 * s2,
          16.0};
}

double horner(const std::array<double, 5>& a, double x) {
  double v = a[4];
  for (int i = 3; i >= 0; --i) v = v * x + a[i];
  return v;
}

double horner_d(const std::array<double, 5>& a, double x) {
  return ((4.0 * a[4] * x + 3.0 * a[3]) * x + 2.0 * a[2]) * x + a[1];
}

}  // namespace

double chsh_corr_bound(double S) {
  require_chsh_range(S, "chsh_corr_bound");
  S = std::clamp(S, 2.0, kTsirelson);
  return std::sqrt(std::clamp(S * S / 4.0 - 1.0, 0.0, 1.0));
}

double asym_chsh_corr_bound(double alpha, double S_alpha) {
  if (!std::isfinite(alpha)) throw DomainError("asym_chsh_corr_bound: alpha not finite");
  const double a = std::abs(alpha);
  const double lo = 2.0 * std::max(1.0, a);
  const double hi = 2.0 * std::sqrt(1.0 + a * a);
  const double s = std::abs(S_alpha);
  if (!(s >= lo - kRangeTol && s <= hi + kRangeTol)) {
    throw DomainError("asym_chsh_corr_bound: S_alpha=" + std::to_string(S_alpha) +
                      " outside quantum range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  const double sc = std::clamp(s, lo, hi);
  if (a >= 1.0 || sc >= 2.0 * std::sqrt(1.0 + a * a - a * a * a * a)) {
    return std::sqrt(std::clamp(sc * sc / 4.0 - a * a, 0.0, 1.0));
  }
  const double inner = 1.0 - std::sqrt((1.0 - a * a) * (sc * sc / 4.0 - 1.0)) / a;
  return std::sqrt(std::clamp(1.0 - inner * inner, 0.0, 1.0));
}

bool PauliCorrelations::admissible(double tol) const {
  const double n1 = zz * zz + zx * zx;
  const double n2 = xz * xz + xx * xx;
  const double cross = zz * xz + zx * xx;
  return n1 <= 1.0 + tol && n2 <= 1.0 + tol &&
         (1.0 - n1) * (1.0 - n2) >= cross * cross - tol;
}

bool MinimizerPoint::feasible(double S, double tol) const {
  return c * lambda + s * mu >= S / 2.0 - tol && lambda * lambda <= 1.0 + tol &&
         mu * mu <= 1.0 + tol &&
         (1.0 - lambda * lambda) * (1.0 - mu * mu) >=
             lambda * lambda * mu * mu * delta * delta - tol &&
         std::abs(c * c + s * s - 1.0) <= tol && delta * delta <= 1.0 + tol;
}

double MinimizerPoint::objective(double p) const {
  return s * s * lambda * lambda + c * c * mu * mu +
         2.0 * (2.0 * p - 1.0) * s * c * lambda * mu * delta;
}

std::vector<double> two_basis_stationary_points(double S) {
  if (!(S > 2.0 && S <= kTsirelson + kRangeTol)) {
    throw DomainError("two_basis_stationary_points: S=" + std::to_string(S) +
                      " outside (2, 2 sqrt 2]");
  }
  S = std::min(S, kTsirelson);
  const double range = S / 4.0 * std::sqrt(std::max(0.0, 8.0 - S * S));
  const auto coef = squared_quartic(S);

  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -coef[i] / coef[4];
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);

  std::vector<double> roots;
  for (int i = 0; i < 4; ++i) {
    const auto z = solver.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-6) continue;
    double x = z.real();
    // Newton polish on the quartic.
    for (int it = 0; it < 8; ++it) {
      const double d = horner_d(coef, x);
      if (d == 0.0) break;
      const double step = horner(coef, x) / d;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    if (x < -range - 1e-12 || x > range + 1e-12) continue;
    x = std::clamp(x, -range, range);
    if (x <= -1.0) continue;
    if (std::abs(stationarity(S, x)) > kRootResidualTol) continue;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              roots.end());
  return roots;
}

double solve_quartic_in_range(double S) {
  const auto roots = two_basis_stationary_points(S);
  if (roots.empty()) {
    throw NumericError("solve_quartic_in_range: no admissible root for S=" +
                       std::to_string(S));
  }
  return roots.front();
}

double two_basis_bound_analytic(double S) {
  require_chsh_range(S, "two_basis_bound_analytic");
  if (S <= 2.0) return 0.0;
  S = std::min(S, kTsirelson);
  const double x = solve_quartic_in_range(S);
  const double den = 1.0 - x;
  const double value = (1.0 + x * x) / den + S * S / 4.0 * (1.0 + x) / den -
                       S / std::numbers::sqrt2 * std::pow(1.0 + x, 1.5) / den;
  return std::clamp(value, 0.0, 1.0);
}

namespace {

// Optimal Delta for fixed (lambda, mu, c, s): the objective is linear in
// Delta, so it sits at the edge allowed by the positivity constraint.
double best_delta(double p, const MinimizerPoint& m) {
  const double lm = m.lambda * m.mu;
  if (lm == 0.0) return 0.0;
  const double room = std::sqrt(std::max(0.0, (1.0 - m.lambda * m.lambda) *
                                                  (1.0 - m.mu * m.mu))) /
                      std::abs(lm);
  const double dmax = std::min(1.0, room);
  const double sign = (2.0 * p - 1.0) * m.s * m.c * lm;
  return sign > 0.0 ? -dmax : dmax;
}

// Point on the active CHSH constraint c lambda + s mu = S/2 parameterized by
// (psi, lambda) with c = cos psi, s = sin psi.
MinimizerPoint on_constraint(double S, double psi, double lambda) {
  MinimizerPoint m;
  m.c = std::cos(psi);
  m.s = std::sin(psi);
  m.lambda = lambda;
  m.mu = m.s != 0.0 ? (S / 2.0 - m.c * lambda) / m.s
                    : std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace

NumericBound two_basis_bound_numeric(double p, double S,
                                     const NumericBoundOptions& opts) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("two_basis_bound_numeric: p outside [0, 1]");
  require_chsh_range(S, "two_basis_bound_numeric");
  S = std::clamp(S, 2.0, kTsirelson);

  // Penalized objective over (psi, lambda); infeasible points are pushed
  // back by their constraint excess.
  auto evaluate = [&](double psi, double lambda, MinimizerPoint* out) {
    double penalty = 0.0;
    if (std::abs(lambda) > 1.0) {
      penalty += std::abs(lambda) - 1.0;
      lambda = std::clamp(lambda, -1.0, 1.0);
    }
    MinimizerPoint m = on_constraint(S, psi, lambda);
    if (!std::isfinite(m.mu)) return 10.0;
    if (std::abs(m.mu) > 1.0) {
      penalty += std::abs(m.mu) - 1.0;
      m.mu = std::clamp(m.mu, -1.0, 1.0);
    }
    m.delta = best_delta(p, m);
    if (out) *out = m;
    if (penalty > 0.0) return 1.0 + penalty;
    return m.objective(p);
  };

  opt::Rng rng(opts.seed);
  const double lo[] = {0.0, -1.0};
  const double hi[] = {std::numbers::pi, 1.0};
  auto starts = opt::latin_hypercube(lo, hi, opts.starts, rng);
  // The symmetric point psi = pi/4, lambda = mu = S/(2 sqrt 2) is always
  // feasible; include it so that at least one start is inside.
  starts.push_back({std::numbers::pi / 4.0, S / (2.0 * std::numbers::sqrt2)});

  NumericBound best;
  best.value = std::numeric_limits<double>::infinity();
  const double step[] = {0.05, 0.05};
  opt::NelderMeadOptions nm;
  nm.max_evaluations = opts.max_iterations;
  nm.x_tol = 1e-12;
  nm.f_tol = 1e-16;
  for (const auto& x0 : starts) {
    const auto res = opt::nelder_mead(
        [&](std::span<const double> x) { return evaluate(x[0], x[1], nullptr); },
        x0, step, nm);
    MinimizerPoint m;
    const double v = evaluate(res.x[0], res.x[1], &m);
    if (v < best.value && m.feasible(S, 1e-9)) {
      best.value = v;
      best.point = m;
    }
  }
  if (!std::isfinite(best.value)) {
    throw NumericError("two_basis_bound_numeric: no feasible point found");
  }
  best.value = std::clamp(best.value, 0.0, 1.0);
  return best;
}

}  // namespace diqkd
