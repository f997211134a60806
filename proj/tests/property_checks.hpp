#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "diqkd/models.hpp"

// Randomized and grid property checks shared by the unit tests and the
// acceptance run. Each check reports its worst observed deviation.

namespace diqkd::testing {

struct Check {
  std::string name;
  double worst = 0.0;  ///< largest violation seen (<= 0 means strictly satisfied)
  double tol = 0.0;
  int samples = 0;

  [[nodiscard]] bool pass() const { return worst <= tol; }
};

/// Independent two-qubit simulation of detection_stats: explicit 4x4 density
/// matrix, binned POVMs, key table and H(A|B).
Statistics density_matrix_stats(const Implementation& impl, NoiseParam q);

/// Uniformly random Implementation with eta, v in [eta_min, 1].
Implementation random_implementation(std::uint64_t seed, int index, double eta_min = 0.0);

Check check_f_q_monotone();
Check check_g_q_monotone();
Check check_g_q_reduces_to_f_q();
Check check_f_q_sqrt_convex();
Check check_f_q_slope();
Check check_correlation_bounds_monotone();
Check check_curve_convex_and_sound();
Check check_certifier_soundness();
Check check_certifier_refutation();
Check check_bias_attack_saturation();
Check check_detection_stats_oracle();

/// All of the above, in a fixed order.
std::vector<std::function<Check()>> property_suite();

}  // namespace diqkd::testing
