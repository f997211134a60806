#include "diqkd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "diqkd/errors.hpp"

namespace diqkd::opt {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> fx;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             std::span<const double> step,
                             const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  NelderMeadResult out;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<double> best = std::move(x0);
  double fbest = eval(best);
  bool converged = false;

  for (int round = 0; round <= opts.restarts; ++round) {
    Simplex s;
    s.x.assign(n + 1, best);
    s.fx.assign(n + 1, fbest);
    const double shrink = std::pow(0.1, round);
    for (std::size_t i = 0; i < n; ++i) {
      s.x[i + 1][i] += step[i] * shrink;
      s.fx[i + 1] = eval(s.x[i + 1]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    converged = false;
    while (evals < opts.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.fx[a] < s.fx[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t nh = order[n - 1];

      double xspread = 0.0;
      for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          xspread = std::max(xspread, std::abs(s.x[j][i] - s.x[lo][i]));
        }
      }
      if (std::abs(s.fx[hi] - s.fx[lo]) <= opts.f_tol && xspread <= opts.x_tol) {
        converged = true;
        break;
      }
      if (xspread <= opts.x_tol * 1e-3) {
        converged = true;
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == hi) continue;
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.x[j][i] / static_cast<double>(n);
      }
      for (std::size_t i = 0; i < n; ++i) trial[i] = centroid[i] + (centroid[i] - s.x[hi][i]);
      const double fr = eval(trial);

      if (fr < s.fx[lo]) {
        for (std::size_t i = 0; i < n; ++i) trial2[i] = centroid[i] + 2.0 * (centroid[i] - s.x[hi][i]);
        const double fe = eval(trial2);
        if (fe < fr) {
          s.x[hi] = trial2;
          s.fx[hi] = fe;
        } else {
          s.x[hi] = trial;
          s.fx[hi] = fr;
        }
        continue;
      }
      if (fr < s.fx[nh]) {
        s.x[hi] = trial;
        s.fx[hi] = fr;
        continue;
      }
      // contraction, outside or inside
      const bool outside = fr < s.fx[hi];
      for (std::size_t i = 0; i < n; ++i) {
        const double far = outside ? trial[i] : s.x[hi][i];
        trial2[i] = centroid[i] + 0.5 * (far - centroid[i]);
      }
      const double fc = eval(trial2);
      if (fc < std::min(fr, s.fx[hi])) {
        s.x[hi] = trial2;
        s.fx[hi] = fc;
        continue;
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == lo) continue;
        for (std::size_t i = 0; i < n; ++i) s.x[j][i] = s.x[lo][i] + 0.5 * (s.x[j][i] - s.x[lo][i]);
        s.fx[j] = eval(s.x[j]);
      }
    }
    const auto it = std::min_element(s.fx.begin(), s.fx.end());
    const auto k = static_cast<std::size_t>(it - s.fx.begin());
    if (*it <= fbest) {
      fbest = *it;
      best = s.x[k];
    }
    if (evals >= opts.max_evaluations) break;
  }

  out.x = std::move(best);
  out.fx = fbest;
  out.evaluations = evals;
  out.converged = converged;
  return out;
}

ScalarMin golden_section(const std::function<double(double)>& f, double lo,
                         double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? ScalarMin{c, fc} : ScalarMin{d, fd};
}

ScalarMin scan_then_golden(const std::function<double(double)>& f, double lo,
                           double hi, int points, double tol) {
  if (hi <= lo) return {lo, f(lo)};
  points = std::max(points, 3);
  const double h = (hi - lo) / (points - 1);
  int best = 0;
  double fbest = f(lo);
  for (int i = 1; i < points; ++i) {
    const double v = f(lo + h * i);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  const double a = lo + h * std::max(best - 1, 0);
  const double b = lo + h * std::min(best + 1, points - 1);
  const ScalarMin refined = golden_section(f, a, b, tol);
  if (refined.fx < fbest) return refined;
  return {lo + h * best, fbest};
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol, int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw SearchError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::vector<double>> latin_hypercube(std::span<const double> lo,
                                                 std::span<const double> hi,
                                                 int n, Rng& rng) {
  const std::size_t dim = lo.size();
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  std::vector<int> perm(n);
  for (std::size_t d = 0; d < dim; ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates with the portable generator.
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.uniform() * (i + 1));
      std::swap(perm[i], perm[std::min(j, i)]);
    }
    for (int i = 0; i < n; ++i) {
      const double u = (perm[i] + rng.uniform()) / n;
      pts[i][d] = lo[d] + (hi[d] - lo[d]) * u;
    }
  }
  return pts;
}

}  // namespace diqkd::opt
