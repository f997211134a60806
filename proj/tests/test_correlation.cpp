#include <algorithm>
#include <cmath>
#include <span>

#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/optimize.hpp"
#include "doctest.h"

using namespace diqkd;
using doctest::Approx;

namespace {

// Residual of 4x(2-x) + 2(S^2+2) + S(x-5) sqrt(2(1+x)).
double residual(double S, double x) {
  return 4 * x * (2 - x) + 2 * (S * S + 2) + S * (x - 5) * std::sqrt(2 * (1 + x));
}

// Dense grid over (phiA, lambda) with mu fixed by the active constraint
// c lambda + s mu = S/2, then local refinement. At p = 1/2 the objective does
// not depend on Delta.
double brute_force_half(double S) {
  const auto value = [S](double ph, double lambda) {
    const double c = std::cos(ph), s = std::sin(ph);
    if (s <= 0.0) return 2.0;
    const double mu = std::max(0.0, (S / 2 - c * lambda) / s);
    if (mu > 1.0 || lambda < 0.0 || lambda > 1.0) return 2.0;
    return s * s * lambda * lambda + c * c * mu * mu;
  };
  double best = 2.0, bp = 0.0, bl = 0.0;
  const int n = 1000;
  for (int i = 1; i < n; ++i) {
    const double ph = i * (3.141592653589793 / 2) / n;
    for (int j = 0; j <= n; ++j) {
      const double v = value(ph, static_cast<double>(j) / n);
      if (v < best) best = v, bp = ph, bl = static_cast<double>(j) / n;
    }
  }
  const double step[2] = {1e-3, 1e-3};
  const auto r = opt::nelder_mead(
      [&](std::span<const double> x) { return value(x[0], x[1]); }, {bp, bl}, step);
  return std::min(best, r.fx);
}

}  // namespace

TEST_CASE("chsh correlator bound") {
  CHECK(chsh_corr_bound(kTsirelson) == Approx(1.0).epsilon(1e-12));
  CHECK(chsh_corr_bound(2.0) == 0.0);
  CHECK(chsh_corr_bound(2.5) == Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(chsh_corr_bound(1.9), DomainError);
  CHECK_THROWS_AS(chsh_corr_bound(2.9), DomainError);
}

TEST_CASE("asymmetric chsh bound") {
  for (double S = 2.0; S <= kTsirelson; S += 0.05) {
    CHECK(asym_chsh_corr_bound(1.0, S) == Approx(chsh_corr_bound(S)).epsilon(1e-12));
  }
  CHECK(asym_chsh_corr_bound(2.0, 2.0 * std::sqrt(5.0)) == Approx(1.0).epsilon(1e-12));
  const double a = 0.5;
  const double sw = 2.0 * std::sqrt(1.0 + a * a - a * a * a * a);
  CHECK(asym_chsh_corr_bound(a, sw - 1e-12) ==
        Approx(asym_chsh_corr_bound(a, sw + 1e-12)).epsilon(1e-9));
  CHECK_THROWS_AS(asym_chsh_corr_bound(2.0, 3.0), DomainError);
}

TEST_CASE("quartic stationary point") {
  CHECK(std::abs(solve_quartic_in_range(kTsirelson)) < 1e-6);
  const double x = solve_quartic_in_range(2.5);
  CHECK(std::abs(residual(2.5, x)) <= 1e-9);
  opt::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const double S = rng.uniform(2.0 + 1e-6, kTsirelson);
    const double r = solve_quartic_in_range(S);
    CHECK(std::abs(r) <= S / 4 * std::sqrt(8 - S * S) + 1e-12);
    CHECK(std::abs(residual(S, r)) <= 1e-9);
  }
}

TEST_CASE("analytic two-basis bound") {
  CHECK(two_basis_bound_analytic(2.0) == 0.0);
  CHECK(two_basis_bound_analytic(kTsirelson) == Approx(1.0).epsilon(1e-9));
  for (double S : {2.1, 2.5, 2.75}) {
    CHECK(std::abs(two_basis_bound_analytic(S) - brute_force_half(S)) <= 1e-6);
  }
}

TEST_CASE("numeric two-basis bound") {
  for (double S : {2.1, 2.4, 2.7}) {
    CHECK(two_basis_bound_numeric(0.5, S).value ==
          Approx(two_basis_bound_analytic(S)).epsilon(1e-6));
    const double e = chsh_corr_bound(S);
    CHECK(std::abs(two_basis_bound_numeric(1.0, S).value - e * e) <= 1e-6);
    CHECK_FALSE(two_basis_bound_numeric(0.3, S).certified);
    // Symmetric under exchanging the two bases.
    CHECK(two_basis_bound_numeric(0.3, S).value ==
          Approx(two_basis_bound_numeric(0.7, S).value).epsilon(1e-6));
  }
  CHECK(two_basis_bound_numeric(0.5, kTsirelson).value == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("numeric minimum below random feasible points") {
  opt::Rng rng(11);
  const double S = 2.4;
  const double p = 0.3;
  const double best = two_basis_bound_numeric(p, S).value;
  int feasible = 0;
  while (feasible < 1000) {
    MinimizerPoint m{rng.uniform(-1, 1), rng.uniform(-1, 1), 0, 0, rng.uniform(-1, 1)};
    const double ph = rng.uniform(0, 6.283185307179586);
    m.c = std::cos(ph);
    m.s = std::sin(ph);
    if (!m.feasible(S, 1e-2)) continue;
    ++feasible;
    CHECK(best <= m.objective(p) + 1e-9);
  }
}

TEST_CASE("pauli correlations of sampled two-qubit states") {
  opt::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    // Product of a real pure state with local rotations: correlations of
    // cos t |00> + sin t |11> measured along angles a0, a1 and b0, b1.
    const double t = rng.uniform(0, 3.14159), a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    const auto E = [&](double pa, double pb) {
      return std::cos(pa) * std::cos(pb) + std::sin(2 * t) * std::sin(pa) * std::sin(pb);
    };
    PauliCorrelations c{E(a, b), E(a, b + 1.5707963267948966), E(a + 1.5707963267948966, b),
                        E(a + 1.5707963267948966, b + 1.5707963267948966)};
    CHECK(c.admissible(1e-9));
  }
  CHECK_FALSE(PauliCorrelations{1.0, 0.5, 0.0, 0.0}.admissible());
}
