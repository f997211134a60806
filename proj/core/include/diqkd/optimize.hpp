#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

// Small derivative-free optimization and root-bracketing toolkit.

namespace diqkd::opt {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  int max_evaluations = 20000;
  double x_tol = 1e-10;
  double f_tol = 1e-15;
  /// Restart from the best vertex with a fresh simplex this many times.
  int restarts = 2;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f starting from x0 with an axis-aligned initial simplex of the
/// given per-coordinate step sizes.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             std::span<const double> step,
                             const NelderMeadOptions& opts = {});

struct ScalarMin {
  double x = 0.0;
  double fx = 0.0;
};

/// Golden-section search on [lo, hi] for a unimodal function.
ScalarMin golden_section(const std::function<double(double)>& f, double lo,
                         double hi, double tol = 1e-10);

/// Evaluates f on a uniform grid of `points` nodes and refines around the
/// best node with golden-section search.
ScalarMin scan_then_golden(const std::function<double(double)>& f, double lo,
                           double hi, int points = 256, double tol = 1e-10);

/// Bisection on a sign change of f in [lo, hi]; returns the midpoint of the
/// final bracket of width <= tol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 1e-12, int max_iter = 200);

/// Deterministic 64-bit generator with a portable uniform double.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// n points of a Latin hypercube in [lo_i, hi_i].
std::vector<std::vector<double>> latin_hypercube(std::span<const double> lo,
                                                 std::span<const double> hi,
                                                 int n, Rng& rng);

}  // namespace diqkd::opt
