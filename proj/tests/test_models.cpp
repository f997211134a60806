#include <cmath>

#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/models.hpp"
#include "doctest.h"
#include "property_checks.hpp"

using namespace diqkd;
using doctest::Approx;

TEST_CASE("white noise statistics") {
  const auto a = white_noise_stats(0.0, NoiseParam(0.0), 0.5);
  CHECK(a.S == Approx(kTsirelson));
  CHECK(a.H_cond == 0.0);
  CHECK(a.sift == Approx(0.5));
  const auto b = white_noise_stats(0.25, NoiseParam(0.0), 1.0);
  CHECK(b.S == Approx(std::sqrt(2.0)));
  CHECK(b.H_cond == Approx(0.8112781244591328));
  CHECK(b.sift == 1.0);
  CHECK(white_noise_stats(0.0, NoiseParam(0.3), 0.5).H_cond == Approx(binary_entropy(0.3)));
  CHECK_THROWS_AS(white_noise_stats(0.6, NoiseParam(0.0), 0.5), DomainError);
}

TEST_CASE("detection statistics at the ideal point") {
  const Statistics s = detection_stats(Implementation::ideal(), NoiseParam(0.0));
  CHECK(s.S == Approx(kTsirelson).epsilon(1e-14));
  CHECK(std::abs(s.a1) < 1e-15);
  CHECK(s.H_A_given_B == Approx(0.0).scale(1.0));
  for (double delta : {0.01, 0.05, 0.1}) {
    const Statistics n = detection_stats(Implementation::ideal(1 - 2 * delta), NoiseParam(0.0));
    CHECK(n.S == Approx(kTsirelson * (1 - 2 * delta)).epsilon(1e-14));
  }
}

TEST_CASE("no detections give deterministic statistics") {
  const Statistics s = detection_stats(Implementation::ideal(1.0, 0.0), NoiseParam(0.0));
  CHECK(s.S == Approx(2.0));
  CHECK(s.a1 == Approx(1.0));
  CHECK(s.H_A_given_B == Approx(0.0).scale(1.0));
}

TEST_CASE("key table structure") {
  for (int i = 0; i < 200; ++i) {
    const Implementation impl = testing::random_implementation(8, i);
    const Statistics s = detection_stats(impl, NoiseParam(0.0));
    double total = 0.0;
    for (const auto& row : s.key_joint)
      for (double p : row) {
        CHECK(p >= -1e-15);
        total += p;
      }
    CHECK(total == Approx(1.0).epsilon(1e-13));
    CHECK(s.key_joint[0][2] + s.key_joint[1][2] == Approx(1.0 - impl.eta).epsilon(1e-13));
    const double a1 = s.key_joint[0][0] + s.key_joint[0][1] + s.key_joint[0][2] -
                      s.key_joint[1][0] - s.key_joint[1][1] - s.key_joint[1][2];
    CHECK(a1 == Approx(s.a1).epsilon(1e-12));
  }
}

TEST_CASE("statistics stay in the quantum set") {
  for (int i = 0; i < 10000; ++i) {
    const Statistics s = detection_stats(testing::random_implementation(42, i), NoiseParam(0.1));
    CHECK(std::abs(s.S) <= kTsirelson + 1e-12);
    CHECK(quantum_boundary({std::abs(s.S), s.a1}));
  }
}

TEST_CASE("quantum boundary") {
  CHECK(quantum_boundary({kTsirelson, 0.0}));
  CHECK(quantum_boundary({2.0, 1.0}));
  CHECK_FALSE(quantum_boundary({2.6, 0.9}));
}

TEST_CASE("density matrix oracle") {
  const auto c = testing::check_detection_stats_oracle();
  CHECK_MESSAGE(c.pass(), c.worst);
}

TEST_CASE("implementation validation") {
  Implementation bad;
  bad.eta = 1.2;
  CHECK_THROWS_AS(detection_stats(bad, NoiseParam(0.0)), DomainError);
  bad = {};
  bad.theta = std::nan("");
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
