#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "diqkd/bias_envelope.hpp"
#include "diqkd/models.hpp"
#include "diqkd/optimize.hpp"
#include "diqkd/tradeoff.hpp"

// Devetak-Winter rates for the two protocol variants, angle optimization and
// threshold searches.

namespace diqkd {

enum class Variant { two_basis, bias };
enum class RateMode { certified, conjectured };

struct ProtocolConfig {
  Variant variant = Variant::two_basis;
  NoiseParam q{};
  double p_prime = 0.5;  ///< Alice's probability of using basis 1 (two-basis only)
};

struct RateResult {
  double rate = 0.0;
  double entropy_bound = 0.0;
  double H_cond = 0.0;
  double sift = 1.0;
  bool certified = false;
  double achieved_epsilon = 0.0;
  std::uint64_t covering_size = 0;
};

inline constexpr int kDefaultCurveResolution = 2000;
inline constexpr double kRateFloor = 1e-14;

/// Weight p = p'^2 / (p'^2 + (1-p')^2) of basis 1 among sifted rounds.
double sifted_basis_weight(double p_prime);

struct TwoBasisCurve {
  TradeoffCurve curve;
  bool certified = true;
};

TwoBasisCurve two_basis_curve(NoiseParam q, double p, int resolution = kDefaultCurveResolution);

RateResult rate_two_basis(double delta, const ProtocolConfig& config, const TwoBasisCurve& curve);
RateResult rate_two_basis(double delta, const ProtocolConfig& config,
                          int resolution = kDefaultCurveResolution);

RateResult rate_from_stats(const Statistics& stats, NoiseParam q, RateMode mode,
                           const CertifyOptions& cert = {});
RateResult rate_bias(const Implementation& impl, NoiseParam q, RateMode mode,
                     const CertifyOptions& cert = {});

struct OptimizeOptions {
  int starts = 16;
  std::uint64_t seed = 2021;
  std::optional<Implementation> warm_start;
  /// Only refine the warm start (no multistart) when it is given.
  bool warm_only = false;
  opt::NelderMeadOptions nm{};
};

struct OptimizedRate {
  Implementation impl;
  RateResult result;
  bool converged = false;
  int evaluations = 0;
};

/// Maximizes the conjectured bias-protocol rate over the state angle and the
/// measurement angles, then evaluates `mode` at the optimum.
OptimizedRate optimize_implementation(double eta, double delta, NoiseParam q, RateMode mode,
                                      const OptimizeOptions& opts = {},
                                      const CertifyOptions& cert = {});

/// Deterministic starting points: the symmetric CHSH point and a family of
/// weakly entangled configurations.
std::vector<Implementation> starting_points(double eta, double delta, int count,
                                            std::uint64_t seed);

struct ThresholdOptions {
  double tol = 1e-7;
  double rate_floor = kRateFloor;
  int max_iter = 200;
};

/// Boundary of {x : rate(x) > floor} between lo and hi, where exactly one end
/// has a rate above the floor. Throws SearchError otherwise.
double threshold_search(const std::function<double(double)>& rate, double lo, double hi,
                        const ThresholdOptions& opts = {});

struct QOptimum {
  double q = 0.0;
  double rate = 0.0;
};

/// Grid scan over q followed by golden-section refinement around the best node.
QOptimum optimize_q(const std::function<double(double)>& rate, const std::vector<double>& q_grid);

struct BiasThreshold {
  double eta = 0.0;
  OptimizedRate at_threshold;  ///< optimum on the positive side of the boundary
  int rate_evaluations = 0;
};

/// Detection-efficiency threshold of the bias protocol: bisection on eta with
/// the angle optimum carried from one step to the next.
BiasThreshold bias_threshold(NoiseParam q, double delta, RateMode mode, double eta_lo,
                             double eta_hi, const ThresholdOptions& topts = {},
                             const OptimizeOptions& oopts = {},
                             const CertifyOptions& cert = {});

struct BudgetedThreshold {
  double eta = 0.0;                 ///< efficiency of the certified optimum
  double epsilon = 0.0;             ///< precision fitted to the budget
  double covering_constant = 0.0;   ///< leaves * epsilon seen at the probe
  OptimizedRate at_threshold;       ///< result holds the certified rate
  int rate_evaluations = 0;
};

/// Certified threshold at the finest precision a leaf budget allows. A
/// certified rate at precision eps is at most R - eps with R the conjectured
/// rate, so the bisection runs on R against the floor margin * eps and only
/// the final optimum is certified. Leaf counts grow like C / eps: C is
/// measured at `probe_epsilon` and eps set to headroom * C / budget.
BudgetedThreshold budgeted_certified_threshold(NoiseParam q, double delta, double eta_lo,
                                               double eta_hi, const CertifyLimits& limits,
                                               const ThresholdOptions& topts = {},
                                               const OptimizeOptions& oopts = {},
                                               double margin = 1.5, double headroom = 1.25,
                                               double probe_epsilon = 1e-7);

}  // namespace diqkd
