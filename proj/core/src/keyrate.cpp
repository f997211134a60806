#include "diqkd/keyrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/optimize.hpp"

namespace diqkd {

double sifted_basis_weight(double p_prime) {
  if (!(p_prime >= 0.0 && p_prime <= 1.0)) {
    throw DomainError("basis probability outside [0, 1]");
  }
  const double a = p_prime * p_prime;
  const double b = (1.0 - p_prime) * (1.0 - p_prime);
  return a / (a + b);
}

TwoBasisCurve two_basis_curve(NoiseParam q, double p, int resolution) {
  TwoBasisCurve out;
  bool certified = true;
  out.curve = convexify_1d(
      [&](double S) {
        const TwoBasisValue v = qubit_bound_two_basis(q, p, S);
        certified = certified && v.certified;
        return v.entropy;
      },
      2.0, kTsirelson, resolution);
  out.certified = certified;
  return out;
}

RateResult rate_two_basis(double delta, const ProtocolConfig& config, const TwoBasisCurve& curve) {
  const WhiteNoiseStats ws = white_noise_stats(delta, config.q, config.p_prime);
  RateResult r;
  r.entropy_bound = curve.curve(ws.S);
  r.H_cond = ws.H_cond;
  r.sift = ws.sift;
  r.rate = ws.sift * (r.entropy_bound - r.H_cond);
  r.certified = curve.certified;
  return r;
}

RateResult rate_two_basis(double delta, const ProtocolConfig& config, int resolution) {
  const double p = sifted_basis_weight(config.p_prime);
  return rate_two_basis(delta, config, two_basis_curve(config.q, p, resolution));
}

RateResult rate_from_stats(const Statistics& stats, NoiseParam q, RateMode mode,
                           const CertifyOptions& cert) {
  const BellPoint point{std::max(stats.S, 2.0), std::abs(stats.a1)};
  RateResult r;
  r.H_cond = stats.H_A_given_B;
  if (mode == RateMode::conjectured) {
    r.entropy_bound = conjectured_envelope_bias(q, point).value;
    r.certified = false;
  } else {
    const CertifiedValue c = certified_envelope_bias(q, point, cert);
    r.entropy_bound = c.value;
    r.certified = c.certified;
    r.achieved_epsilon = c.bound.achieved_epsilon;
    r.covering_size = c.bound.covering_size;
  }
  r.rate = r.entropy_bound - r.H_cond;
  return r;
}

RateResult rate_bias(const Implementation& impl, NoiseParam q, RateMode mode,
                     const CertifyOptions& cert) {
  return rate_from_stats(detection_stats(impl, q), q, mode, cert);
}

namespace {

using Params = std::array<double, 6>;

Params to_params(const Implementation& impl) {
  return {impl.theta, impl.phiA[0], impl.phiA[1], impl.phiB[0], impl.phiB[1], impl.phiB[2]};
}

Implementation from_params(std::span<const double> x, double eta, double v) {
  Implementation impl;
  impl.theta = x[0];
  impl.phiA = {x[1], x[2]};
  impl.phiB = {x[3], x[4], x[5]};
  impl.eta = eta;
  impl.v = v;
  return impl;
}

Params lerp(const Params& a, const Params& b, double t) {
  Params out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

std::vector<Implementation> starting_points(double eta, double delta, int count,
                                            std::uint64_t seed) {
  const double v = 1.0 - 2.0 * delta;
  constexpr double pi = std::numbers::pi;
  // Path from a weakly entangled configuration with small Bell-test angles
  // (optimal near threshold) up to the symmetric CHSH configuration.
  const std::array<Params, 4> path{{
      {0.15, -0.007, 0.80, 0.06, -0.40, -0.005},
      {0.28, -0.0125, 0.98, 0.118, -0.486, -0.009},
      {0.91, -0.047, 1.415, 0.524, -0.771, -0.057},
      {pi / 2, 0.0, pi / 2, pi / 4, -pi / 4, 0.0},
  }};
  std::vector<Implementation> out;
  const int on_path = std::max(1, (count * 5 + 7) / 8);
  for (int i = 0; i < on_path && static_cast<int>(out.size()) < count; ++i) {
    const double s = on_path == 1 ? 1.0 : static_cast<double>(i) / (on_path - 1);
    const double u = (1.0 - s) * 3.0;  // symmetric point first
    const int seg = std::min(static_cast<int>(u), 2);
    const Params p = lerp(path[seg], path[seg + 1], u - seg);
    out.push_back(from_params(p, eta, v));
  }
  opt::Rng rng(seed);
  const std::array<double, 6> lo{0.05, -0.3, 0.3, -0.3, -1.2, -0.3};
  const std::array<double, 6> hi{pi / 2, 0.3, pi / 2, pi / 2, 0.0, 0.3};
  const auto lhs = opt::latin_hypercube(lo, hi, std::max(0, count - static_cast<int>(out.size())), rng);
  for (const auto& x : lhs) out.push_back(from_params(x, eta, v));
  return out;
}

OptimizedRate optimize_implementation(double eta, double delta, NoiseParam q, RateMode mode,
                                      const OptimizeOptions& opts, const CertifyOptions& cert) {
  if (!(delta >= 0.0 && delta <= 0.5)) throw DomainError("optimize_implementation: delta");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("optimize_implementation: eta");
  const double v = 1.0 - 2.0 * delta;
  const opt::Objective objective = [&](std::span<const double> x) {
    return -rate_bias(from_params(x, eta, v), q, RateMode::conjectured).rate;
  };

  // Near the threshold the optimum shrinks toward the deterministic point
  // with theta ~ (eta - eta*) and the angles ~ sqrt(theta); a warm start is
  // also tried rescaled along that path, with steps relative to its size.
  struct Start {
    Params x;
    Params step;
  };
  std::vector<Start> starts;
  if (opts.warm_start) {
    const Params w = to_params(*opts.warm_start);
    for (const double sc : {1.0, 0.8, 0.6, 0.45}) {
      Start st;
      st.x[0] = w[0] * sc * sc;
      for (std::size_t i = 1; i < w.size(); ++i) st.x[i] = w[i] * sc;
      for (std::size_t i = 0; i < w.size(); ++i) {
        st.step[i] = std::clamp(0.2 * std::abs(st.x[i]), 1e-6, 0.05);
      }
      starts.push_back(st);
    }
  }
  if (!opts.warm_start || !opts.warm_only) {
    for (const Implementation& impl : starting_points(eta, delta, opts.starts, opts.seed)) {
      Start st;
      st.x = to_params(impl);
      st.step.fill(0.05);
      starts.push_back(st);
    }
  }

  OptimizedRate best;
  double best_f = std::numeric_limits<double>::infinity();
  for (const Start& s : starts) {
    const opt::NelderMeadResult r = opt::nelder_mead(
        objective, std::vector<double>(s.x.begin(), s.x.end()), s.step, opts.nm);
    best.evaluations += r.evaluations;
    if (r.fx < best_f) {
      best_f = r.fx;
      best.impl = from_params(r.x, eta, v);
      best.converged = r.converged;
    }
  }
  best.result = rate_bias(best.impl, q, mode, cert);
  return best;
}

double threshold_search(const std::function<double(double)>& rate, double lo, double hi,
                        const ThresholdOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("threshold_search: tol must be positive");
  const bool pos_lo = rate(lo) > opts.rate_floor;
  const bool pos_hi = rate(hi) > opts.rate_floor;
  if (pos_lo == pos_hi) {
    throw SearchError("threshold_search: no straddle on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  double good = pos_lo ? lo : hi;
  double bad = pos_lo ? hi : lo;
  for (int i = 0; i < opts.max_iter && std::abs(good - bad) > opts.tol; ++i) {
    const double mid = 0.5 * (good + bad);
    (rate(mid) > opts.rate_floor ? good : bad) = mid;
  }
  return 0.5 * (good + bad);
}

QOptimum optimize_q(const std::function<double(double)>& rate, const std::vector<double>& q_grid) {
  if (q_grid.empty()) throw DomainError("optimize_q: empty grid");
  std::vector<double> grid = q_grid;
  std::sort(grid.begin(), grid.end());
  std::size_t ib = 0;
  double rb = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = rate(grid[i]);
    if (r > rb) {
      rb = r;
      ib = i;
    }
  }
  QOptimum best{grid[ib], rb};
  if (grid.size() >= 2) {
    const double lo = grid[ib == 0 ? 0 : ib - 1];
    const double hi = grid[std::min(ib + 1, grid.size() - 1)];
    const opt::ScalarMin m = opt::golden_section([&](double q) { return -rate(q); }, lo, hi, 1e-9);
    if (-m.fx > best.rate) best = {m.x, -m.fx};
  }
  return best;
}

BiasThreshold bias_threshold(NoiseParam q, double delta, RateMode mode, double eta_lo,
                             double eta_hi, const ThresholdOptions& topts,
                             const OptimizeOptions& oopts, const CertifyOptions& cert) {
  if (!(eta_lo < eta_hi)) throw DomainError("bias_threshold: empty bracket");
  BiasThreshold out;
  const auto solve = [&](double eta, const std::optional<Implementation>& warm) {
    OptimizeOptions o = oopts;
    if (warm) {
      o.warm_start = warm;
      o.warm_only = true;
    }
    OptimizedRate r = optimize_implementation(eta, delta, q, mode, o, cert);
    ++out.rate_evaluations;
    return r;
  };

  OptimizedRate good = solve(eta_hi, oopts.warm_start);
  if (!(good.result.rate > topts.rate_floor)) {
    throw SearchError("bias_threshold: no positive rate at eta=" + std::to_string(eta_hi));
  }
  double hi = eta_hi;
  // March down with warm starts so the optimum is continued along the way;
  // a cold multistart confirms each failing step.
  double lo = eta_lo;
  const double step = std::max((eta_hi - eta_lo) / 16.0, 1e-3);
  for (double eta = hi - step;; eta -= step) {
    eta = std::max(eta, eta_lo);
    OptimizedRate r = solve(eta, good.impl);
    if (!(r.result.rate > topts.rate_floor)) {
      OptimizedRate cold = optimize_implementation(eta, delta, q, mode, oopts, cert);
      ++out.rate_evaluations;
      if (cold.result.rate > r.result.rate) r = cold;
    }
    if (r.result.rate > topts.rate_floor) {
      good = r;
      hi = eta;
      if (eta == eta_lo) {
        throw SearchError("bias_threshold: rate still positive at eta=" + std::to_string(eta_lo));
      }
    } else {
      lo = eta;
      break;
    }
  }
  while (hi - lo > topts.tol) {
    const double mid = 0.5 * (lo + hi);
    OptimizedRate r = solve(mid, good.impl);
    if (r.result.rate > topts.rate_floor) {
      good = r;
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.eta = 0.5 * (lo + hi);
  out.at_threshold = good;
  return out;
}

BudgetedThreshold budgeted_certified_threshold(NoiseParam q, double delta, double eta_lo,
                                               double eta_hi, const CertifyLimits& limits,
                                               const ThresholdOptions& topts,
                                               const OptimizeOptions& oopts, double margin,
                                               double headroom, double probe_epsilon) {
  if (!(margin > 1.0 && headroom >= 1.0 && probe_epsilon > 0.0)) {
    throw DomainError("budgeted_certified_threshold: need margin > 1, headroom >= 1");
  }
  if (limits.leaf_budget == 0) throw DomainError("budgeted_certified_threshold: no leaf budget");
  const double budget = static_cast<double>(limits.leaf_budget);
  BudgetedThreshold out;
  const auto search = [&](double eps) {
    ThresholdOptions t = topts;
    t.rate_floor = margin * eps;
    const BiasThreshold b =
        bias_threshold(q, delta, RateMode::conjectured, eta_lo, eta_hi, t, oopts);
    out.rate_evaluations += b.rate_evaluations;
    return b.at_threshold;
  };

  double eps = probe_epsilon;
  OptimizedRate at = search(eps);
  // C drifts with the tangent, so refit until the precision settles.
  for (int round = 0; round < 4; ++round) {
    const Statistics st = detection_stats(at.impl, q);
    AffineBound plane = conjectured_envelope_bias(q, {std::max(st.S, 2.0), std::abs(st.a1)}).tangent;
    plane.epsilon = std::max(probe_epsilon, eps);
    AffineBound probe = certify_bias_plane(q, plane, limits);
    while (probe.status == CertStatus::limit_exceeded && plane.epsilon < 1e-3) {
      plane.epsilon *= 10.0;
      probe = certify_bias_plane(q, plane, limits);
    }
    if (probe.status != CertStatus::certified) break;
    out.covering_constant = static_cast<double>(probe.covering_size) * plane.epsilon;
    const double next = headroom * out.covering_constant / budget;
    const bool settled = round > 0 && std::abs(next / eps - 1.0) < 0.25;
    eps = next;
    if (settled) break;
    at = search(eps);
  }

  CertifyOptions cert;
  cert.epsilon = eps;
  cert.fit_budget = false;
  cert.epsilon_growth = 1.25;
  cert.epsilon_max = std::max(eps, at.result.rate / margin * 1.2);
  cert.limits = limits;
  at.result = rate_bias(at.impl, q, RateMode::certified, cert);
  out.eta = at.impl.eta;
  out.epsilon = eps;
  out.at_threshold = at;
  return out;
}

}  // namespace diqkd
