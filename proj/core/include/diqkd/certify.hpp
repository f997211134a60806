#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// Certification of an affine lower bound beta + alpha . S - eps on a
// monotonous two-variable qubit bound, by recursive rectangle covering.

namespace diqkd {

struct Rect {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};

  [[nodiscard]] std::array<std::array<double, 2>, 4> vertices() const {
    return {{{lo[0], lo[1]}, {hi[0], lo[1]}, {lo[0], hi[1]}, {hi[0], hi[1]}}};
  }
  [[nodiscard]] bool contains(const std::array<double, 2>& p) const {
    return p[0] >= lo[0] && p[0] <= hi[0] && p[1] >= lo[1] && p[1] <= hi[1];
  }
};

enum class CertStatus { unchecked, certified, refuted, limit_exceeded };

std::string to_string(CertStatus s);

/// beta + alpha . S - epsilon, together with what certification found.
struct AffineBound {
  double beta = 0.0;
  std::array<double, 2> alpha{};
  double epsilon = 0.0;

  CertStatus status = CertStatus::unchecked;
  /// Largest beta + alpha[K] - f[K] over the accepted leaves.
  double achieved_epsilon = 0.0;
  std::uint64_t covering_size = 0;
  std::uint64_t discarded = 0;
  int max_depth_reached = 0;
  /// Why certification stopped, for limit_exceeded: "max_depth" or "leaf_budget".
  std::string limit_reason;
  /// Refuting or failing rectangle, with its test value.
  std::optional<Rect> witness;
  double witness_gap = 0.0;

  [[nodiscard]] double operator()(double x, double y) const {
    return beta + alpha[0] * x + alpha[1] * y;
  }
};

struct CoveringLeaf {
  Rect rect;
  double lower_value = 0.0;  ///< f[K]
  int depth = 0;
};

struct RectCovering {
  std::vector<CoveringLeaf> leaves;  ///< may be truncated, see CertifyLimits
  int max_depth = 0;
};

enum class SplitRule {
  quad,      ///< bisect both axes
  dominant,  ///< bisect only the axis with the larger alpha_i * width_i
};

struct CertifyLimits {
  SplitRule split = SplitRule::quad;
  int max_depth = 40;
  std::uint64_t leaf_budget = 10'000'000;
  /// Keep at most this many leaves in the returned covering.
  std::size_t stored_leaves = 0;
};

/// Lower value f[K] of a rectangle from its lower corner. Returns nullopt when
/// the corner lies outside the domain; since the domain is assumed to be a
/// down-set, the whole rectangle is then outside and is discarded.
using CornerBound = std::function<std::optional<double>(double, double)>;

/// Tests beta + alpha[K] - f[K] <= eps on `domain`, quad-splitting every
/// failing rectangle. Depth-first and deterministic.
AffineBound certify_affine(const CornerBound& bound, const Rect& domain,
                           AffineBound candidate, const CertifyLimits& limits = {},
                           RectCovering* covering = nullptr);

}  // namespace diqkd
