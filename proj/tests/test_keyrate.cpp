#include <cmath>

#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/keyrate.hpp"
#include "doctest.h"

using namespace diqkd;
using doctest::Approx;

namespace {

ProtocolConfig two_basis(double q, double p_prime = 0.5) {
  return {Variant::two_basis, NoiseParam(q), p_prime};
}

}  // namespace

TEST_CASE("two-basis rate endpoints") {
  // The corner rule evaluates the top cell at its lower end, 2 sqrt2 - h.
  const double top = kTsirelson - (kTsirelson - 2.0) / kDefaultCurveResolution;
  for (double q : {0.0, 0.3}) {
    const RateResult r = rate_two_basis(0.0, two_basis(q));
    const double ideal = 0.5 * (1.0 - binary_entropy(q));
    CHECK(r.rate <= ideal);
    CHECK(r.rate == Approx(ideal).epsilon(2e-3));
    CHECK(r.rate == Approx(0.5 * (qubit_bound_two_basis(NoiseParam(q), 0.5, top).entropy -
                                  binary_entropy(q)))
                        .epsilon(1e-12));
  }
  CHECK(rate_two_basis(0.0, two_basis(0.0), 200000).rate == Approx(0.5).epsilon(1e-4));
  CHECK(std::abs(rate_two_basis(0.0836, two_basis(0.0), 20000).rate) < 2e-4);
  CHECK(sifted_basis_weight(0.5) == Approx(0.5));
  CHECK(sifted_basis_weight(1.0) == 1.0);
}

TEST_CASE("two-basis rate decreases with the error rate") {
  for (double q : {0.0, 0.25}) {
    const TwoBasisCurve curve = two_basis_curve(NoiseParam(q), 0.5);
    double prev = 1.0;
    for (int i = 0; i <= 100; ++i) {
      const RateResult r = rate_two_basis(0.12 * i / 100, two_basis(q), curve);
      CHECK(r.rate <= prev + 1e-15);
      CHECK(r.rate == Approx(r.sift * (r.entropy_bound - r.H_cond)));
      prev = r.rate;
    }
  }
}

TEST_CASE("bias rate at the ideal point") {
  const Implementation ideal = Implementation::ideal();
  CHECK(rate_bias(ideal, NoiseParam(0.0), RateMode::conjectured).rate == Approx(1.0).epsilon(1e-9));
  // No plane of finite slope touches the bound at the Tsirelson corner, so
  // the certified rate stays strictly below one there.
  const RateResult c = rate_bias(ideal, NoiseParam(0.0), RateMode::certified);
  CHECK(c.certified);
  CHECK(c.rate < 1.0);
  CHECK(c.rate > 0.95);
}

TEST_CASE("unbiased bias rate matches the chsh rate") {
  for (double v : {1.0, 0.97, 0.93}) {
    const Implementation impl = Implementation::ideal(v);
    const Statistics st = detection_stats(impl, NoiseParam(0.0));
    const double expected = qubit_bound_chsh(st.S) - st.H_A_given_B;
    CHECK(rate_bias(impl, NoiseParam(0.0), RateMode::conjectured).rate ==
          Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("certified rate below the conjectured rate") {
  CertifyOptions cert;
  cert.epsilon = 1e-7;
  for (int i = 0; i < 6; ++i) {
    Implementation impl = Implementation::ideal(0.99, 0.9 + 0.02 * i);
    impl.theta = 1.2 + 0.05 * i;
    const RateResult lo = rate_bias(impl, NoiseParam(0.1), RateMode::certified, cert);
    const RateResult hi = rate_bias(impl, NoiseParam(0.1), RateMode::conjectured);
    CHECK(lo.rate <= hi.rate + 1e-15);
    CHECK(hi.rate - lo.rate <= lo.achieved_epsilon + 1e-12);
  }
}

TEST_CASE("angle optimization") {
  const OptimizedRate ideal = optimize_implementation(1.0, 0.0, NoiseParam(0.0), RateMode::conjectured);
  CHECK(ideal.result.rate == Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(std::sin(ideal.impl.theta)) == Approx(1.0).epsilon(1e-3));
  CHECK(optimize_implementation(0.83, 0.0, NoiseParam(0.3), RateMode::conjectured).result.rate > 0);
  CHECK(optimize_implementation(0.87, 0.005, NoiseParam(0.49), RateMode::conjectured).result.rate > 0);
  CHECK(optimize_implementation(0.81, 0.0, NoiseParam(0.49), RateMode::conjectured).result.rate > 0);
  const OptimizedRate a = optimize_implementation(0.9, 0.0, NoiseParam(0.1), RateMode::conjectured);
  const OptimizedRate b = optimize_implementation(0.9, 0.0, NoiseParam(0.1), RateMode::conjectured);
  CHECK(a.result.rate == b.result.rate);
  CHECK(starting_points(0.9, 0.0, 16, 2021).size() == 16);
}

TEST_CASE("threshold search") {
  const auto step = [](double x) { return x < 0.3 ? 1.0 : -1.0; };
  ThresholdOptions o;
  o.tol = 1e-9;
  CHECK(threshold_search(step, 0.0, 1.0, o) == Approx(0.3).epsilon(1e-8));
  CHECK(threshold_search(step, 1.0, 0.0, o) == Approx(0.3).epsilon(1e-8));
  CHECK_THROWS_AS(threshold_search(step, 0.5, 1.0, o), SearchError);
  // Refining the tolerance moves the answer by at most the coarse tolerance.
  const auto smooth = [](double x) { return std::pow(0.4123 - x, 3); };
  for (double tol : {1e-3, 1e-5, 1e-7}) {
    ThresholdOptions a, b;
    a.tol = tol;
    b.tol = tol / 10;
    CHECK(std::abs(threshold_search(smooth, 0, 1, a) - threshold_search(smooth, 0, 1, b)) <= tol);
  }
}

TEST_CASE("two-basis threshold") {
  const TwoBasisCurve curve = two_basis_curve(NoiseParam(0.0), 0.5, 20000);
  const double d = threshold_search(
      [&](double x) { return rate_two_basis(x, two_basis(0.0), curve).rate; }, 0.0, 0.25);
  CHECK(d * 100 == Approx(8.3599).epsilon(0.005 / 8.36));
}

TEST_CASE("noise optimization") {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.0 + 0.499999 * i / 20);
  const QOptimum toy = optimize_q([](double q) { return -(q - 0.137) * (q - 0.137); }, grid);
  CHECK(toy.q == Approx(0.137).epsilon(1e-6));
  const auto at = [](double delta) {
    return [delta](double q) { return rate_two_basis(delta, two_basis(q), 500).rate; };
  };
  const QOptimum zero = optimize_q(at(0.0), grid);
  CHECK(zero.q == Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(zero.rate == Approx(rate_two_basis(0.0, two_basis(0.0), 500).rate));
  // 9% lies above the q = 0 threshold and below the q -> 1/2 one.
  const QOptimum high = optimize_q(at(0.09), grid);
  CHECK(high.rate > 0.0);
  CHECK(high.q > 0.1);
  CHECK(rate_two_basis(0.09, two_basis(0.0), 500).rate < 0.0);
}

TEST_CASE("bias threshold brackets") {
  CHECK_THROWS_AS(bias_threshold(NoiseParam(0.0), 0.0, RateMode::conjectured, 0.5, 0.6), SearchError);
}

TEST_CASE("budgeted certified threshold") {
  const NoiseParam q(0.2);
  ThresholdOptions t;
  t.tol = 1e-5;
  const BiasThreshold conj = bias_threshold(q, 0.005, RateMode::conjectured, 0.8, 0.97, t);
  CertifyLimits limits;
  limits.split = SplitRule::dominant;
  limits.max_depth = 100;
  limits.leaf_budget = 2'000'000;
  const BudgetedThreshold b = budgeted_certified_threshold(q, 0.005, 0.8, 0.97, limits, t);
  const RateResult& r = b.at_threshold.result;
  CHECK(r.certified);
  CHECK(r.rate > 0.0);
  CHECK(r.covering_size <= limits.leaf_budget);
  CHECK(b.epsilon == Approx(1.25 * b.covering_constant / 2e6).epsilon(1e-12));
  CHECK(b.eta >= conj.eta - t.tol);
  CHECK(b.eta - conj.eta < 5e-4);
  CHECK_THROWS_AS(budgeted_certified_threshold(q, 0.005, 0.8, 0.97, limits, t, {}, 1.0),
                  DomainError);
}
