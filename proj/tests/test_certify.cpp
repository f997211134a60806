#include <cmath>

#include "diqkd/bias_envelope.hpp"
#include "diqkd/certify.hpp"
#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/tradeoff.hpp"
#include "doctest.h"
#include "property_checks.hpp"

using namespace diqkd;
using doctest::Approx;

namespace {

const Rect kUnit{{0.0, 0.0}, {1.0, 1.0}};

CornerBound bowl() {
  return [](double x, double y) -> std::optional<double> { return x * x + y * y; };
}

}  // namespace

TEST_CASE("constant bound") {
  const CornerBound c = [](double, double) -> std::optional<double> { return 0.7; };
  AffineBound plane;
  plane.beta = 0.7;
  const AffineBound r = certify_affine(c, kUnit, plane);
  CHECK(r.status == CertStatus::certified);
  CHECK(r.covering_size == 1);
  CHECK(r.achieved_epsilon == 0.0);
}

TEST_CASE("covering leaves tile the domain") {
  AffineBound plane;  // 0 <= x^2 + y^2 everywhere; needs splitting at eps = 0
  plane.alpha = {0.5, 0.5};
  plane.beta = -0.5;
  plane.epsilon = 1e-3;
  RectCovering cov;
  CertifyLimits lim;
  lim.stored_leaves = 1u << 20;
  const AffineBound r = certify_affine(bowl(), kUnit, plane, lim, &cov);
  REQUIRE(r.status == CertStatus::certified);
  REQUIRE(cov.leaves.size() == r.covering_size);
  double area = 0.0;
  for (const auto& leaf : cov.leaves) {
    area += (leaf.rect.hi[0] - leaf.rect.lo[0]) * (leaf.rect.hi[1] - leaf.rect.lo[1]);
    for (const auto& v : leaf.rect.vertices()) {
      CHECK(leaf.lower_value <= v[0] * v[0] + v[1] * v[1] + 1e-15);
    }
  }
  CHECK(area == Approx(1.0).epsilon(1e-12));
  CHECK(r.achieved_epsilon <= plane.epsilon);
}

TEST_CASE("refutation carries a witness") {
  AffineBound plane;
  plane.beta = 0.1;  // above the minimum 0 of the bowl at the origin
  const AffineBound r = certify_affine(bowl(), kUnit, plane);
  REQUIRE(r.status == CertStatus::refuted);
  REQUIRE(r.witness.has_value());
  const auto lo = r.witness->lo;
  CHECK(r.witness_gap == Approx(plane(lo[0], lo[1]) - (lo[0] * lo[0] + lo[1] * lo[1])));
  CHECK(r.witness_gap > 0.0);
}

TEST_CASE("limits are reported apart from refutation") {
  AffineBound plane;
  plane.alpha = {1.0, 1.0};
  plane.beta = -0.5;  // touches x^2 + y^2 at (1/2, 1/2)
  plane.epsilon = 0.0;
  CertifyLimits lim;
  lim.max_depth = 6;
  const AffineBound r = certify_affine(bowl(), kUnit, plane, lim);
  CHECK(r.status == CertStatus::limit_exceeded);
  CHECK(r.limit_reason == "max_depth");
  lim.max_depth = 40;
  lim.leaf_budget = 100;
  const AffineBound b = certify_affine(bowl(), kUnit, plane, lim);
  CHECK(b.status == CertStatus::limit_exceeded);
  CHECK(b.limit_reason == "leaf_budget");
  plane.epsilon = -1.0;
  CHECK_THROWS_AS(certify_affine(bowl(), kUnit, plane), DomainError);
}

TEST_CASE("discarded rectangles outside a down-set") {
  const CornerBound disc = [](double x, double y) -> std::optional<double> {
    if (x * x + y * y > 1.0) return std::nullopt;
    return 0.0;
  };
  AffineBound plane;
  plane.alpha = {0.1, 0.1};
  plane.epsilon = 0.25;
  RectCovering cov;
  CertifyLimits lim;
  lim.stored_leaves = 1000;
  const AffineBound r = certify_affine(disc, {{0, 0}, {2, 2}}, plane, lim, &cov);
  CHECK(r.status == CertStatus::certified);
  CHECK(r.discarded > 0);
  for (const auto& leaf : cov.leaves) {
    CHECK(leaf.rect.lo[0] * leaf.rect.lo[0] + leaf.rect.lo[1] * leaf.rect.lo[1] <= 1.0);
  }
}

TEST_CASE("split rules agree") {
  AffineBound plane = conjectured_envelope_bias(NoiseParam(0.2), {2.4, 0.3}).tangent;
  plane.epsilon = 1e-4;
  CertifyLimits quad;
  CertifyLimits dom;
  dom.split = SplitRule::dominant;
  dom.max_depth = 80;
  const AffineBound a = certify_bias_plane(NoiseParam(0.2), plane, quad);
  const AffineBound b = certify_bias_plane(NoiseParam(0.2), plane, dom);
  CHECK(a.status == CertStatus::certified);
  CHECK(b.status == CertStatus::certified);
  CHECK(b.covering_size < a.covering_size);
}

TEST_CASE("conjectured envelope") {
  for (double qv : {0.0, 0.2, 0.45}) {
    const NoiseParam q(qv);
    const EnvelopeValue top = conjectured_envelope_bias(q, {kTsirelson, 0.0});
    CHECK(top.value == Approx(1.0).epsilon(1e-9));
    CHECK(conjectured_envelope_bias(q, {2.0, 1.0}).value == Approx(binary_entropy(qv)).epsilon(1e-12));
    for (auto [S, a] : {std::pair{2.2, 0.5}, {2.5, 0.2}, {2.05, 0.95}, {2.5, 0.6}}) {
      const EnvelopeValue e = conjectured_envelope_bias(q, {S, a});
      CHECK(e.value <= qubit_bound_bias(q, {S, a}) + 1e-12);
      CHECK(e.tangent(a, S) == Approx(e.value).epsilon(1e-9));
      CHECK(e.t >= 0.0);
      CHECK(e.t < 1.0);
      CHECK(e.partner.in_quantum_set(1e-9));
      // Negative <A1> reduces to |<A1>|.
      CHECK(conjectured_envelope_bias(q, {S, -a}).value == e.value);
    }
  }
  CHECK_THROWS_AS(conjectured_envelope_bias(NoiseParam(0.1), {2.7, 0.9}), BoundaryViolation);
}

TEST_CASE("envelope below the bias bound along rays") {
  const NoiseParam q(0.1);
  for (int i = 1; i < 40; ++i) {
    const double a = i / 40.0;
    for (int j = 1; j < 40; ++j) {
      const double S = 2.0 + (kTsirelson - 2.0) * j / 40.0;
      if (!BellPoint{S, a}.in_quantum_set()) continue;
      CHECK(conjectured_envelope_bias(q, {S, a}).value <= qubit_bound_bias(q, {S, a}) + 1e-12);
    }
  }
}

TEST_CASE("certified envelope") {
  const NoiseParam q(0.2);
  CertifyOptions opts;
  opts.epsilon = 1e-6;
  opts.fit_budget = false;
  const CertifiedValue v = certified_envelope_bias(q, {2.4, 0.3}, opts);
  REQUIRE(v.certified);
  CHECK(v.bound.achieved_epsilon <= 1e-6);
  CHECK(v.conjectured - v.value <= 1e-6 + 1e-12);
  CHECK(v.value <= v.conjectured);
  const CertifiedValue end = certified_envelope_bias(q, {2.0, 1.0}, opts);
  CHECK(end.certified);
  CHECK(std::abs(end.value - binary_entropy(0.2)) <= 1e-6);
}

TEST_CASE("fig 2 tangent at epsilon 0.025") {
  AffineBound plane = conjectured_envelope_bias(NoiseParam(0.2), {2.2, 0.5}).tangent;
  plane.epsilon = 0.025;
  const AffineBound r = certify_bias_plane(NoiseParam(0.2), plane);
  CHECK(r.status == CertStatus::certified);
  CHECK(r.covering_size <= 200);
}

TEST_CASE("certifier property checks") {
  for (auto check : {testing::check_certifier_soundness, testing::check_certifier_refutation}) {
    const auto c = check();
    CHECK_MESSAGE(c.pass(), c.name << " worst " << c.worst);
  }
}
