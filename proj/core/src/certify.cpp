#include "diqkd/certify.hpp"

#include <algorithm>
#include <limits>

#include "diqkd/errors.hpp"

namespace diqkd {

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::unchecked: return "unchecked";
    case CertStatus::certified: return "certified";
    case CertStatus::refuted: return "refuted";
    case CertStatus::limit_exceeded: return "limit_exceeded";
  }
  return "unknown";
}

namespace {

struct Node {
  Rect rect;
  int depth;
};

double max_over_vertices(const AffineBound& b, const Rect& r) {
  // alpha . S is maximal at the vertex picked coordinate-wise by sign.
  const double x = b.alpha[0] >= 0.0 ? r.hi[0] : r.lo[0];
  const double y = b.alpha[1] >= 0.0 ? r.hi[1] : r.lo[1];
  return b.alpha[0] * x + b.alpha[1] * y;
}

}  // namespace

AffineBound certify_affine(const CornerBound& bound, const Rect& domain,
                           AffineBound candidate, const CertifyLimits& limits,
                           RectCovering* covering) {
  if (candidate.epsilon < 0.0) throw DomainError("certify_affine: epsilon < 0");
  AffineBound out = candidate;
  out.status = CertStatus::certified;
  out.achieved_epsilon = -std::numeric_limits<double>::infinity();
  out.covering_size = 0;
  out.discarded = 0;
  out.max_depth_reached = 0;
  out.witness.reset();
  out.limit_reason.clear();
  if (covering) {
    covering->leaves.clear();
    covering->max_depth = 0;
  }

  std::vector<Node> stack;
  stack.push_back({domain, 0});
  while (!stack.empty()) {
    const Node node = stack.back();
    stack.pop_back();
    out.max_depth_reached = std::max(out.max_depth_reached, node.depth);

    const auto fk = bound(node.rect.lo[0], node.rect.lo[1]);
    if (!fk) {
      ++out.discarded;
      continue;
    }
    const double gap = out.beta + max_over_vertices(out, node.rect) - *fk;
    if (gap <= out.epsilon) {
      out.achieved_epsilon = std::max(out.achieved_epsilon, gap);
      ++out.covering_size;
      if (covering && covering->leaves.size() < limits.stored_leaves) {
        covering->leaves.push_back({node.rect, *fk, node.depth});
      }
      if (out.covering_size > limits.leaf_budget) {
        out.status = CertStatus::limit_exceeded;
        out.limit_reason = "leaf_budget";
        out.witness = node.rect;
        out.witness_gap = gap;
        break;
      }
      continue;
    }
    // The plane exceeds the bound itself at the lower corner: a genuine
    // counterexample, independent of the covering.
    const double point_gap = out(node.rect.lo[0], node.rect.lo[1]) - *fk;
    if (point_gap > out.epsilon) {
      out.status = CertStatus::refuted;
      out.witness = Rect{node.rect.lo, node.rect.lo};
      out.witness_gap = point_gap;
      break;
    }
    if (node.depth >= limits.max_depth) {
      out.status = CertStatus::limit_exceeded;
      out.limit_reason = "max_depth";
      out.witness = node.rect;
      out.witness_gap = gap;
      break;
    }
    if (limits.split == SplitRule::dominant) {
      const double w0 = std::abs(out.alpha[0]) * (node.rect.hi[0] - node.rect.lo[0]);
      const double w1 = std::abs(out.alpha[1]) * (node.rect.hi[1] - node.rect.lo[1]);
      const int axis = w0 >= w1 ? 0 : 1;
      const double m = 0.5 * (node.rect.lo[axis] + node.rect.hi[axis]);
      Rect upper = node.rect;
      Rect lower = node.rect;
      upper.lo[axis] = m;
      lower.hi[axis] = m;
      stack.push_back({upper, node.depth + 1});
      stack.push_back({lower, node.depth + 1});
      continue;
    }
    const double mx = 0.5 * (node.rect.lo[0] + node.rect.hi[0]);
    const double my = 0.5 * (node.rect.lo[1] + node.rect.hi[1]);
    const int d = node.depth + 1;
    // Pushed in reverse so the lower-left child is examined first.
    stack.push_back({{{mx, my}, node.rect.hi}, d});
    stack.push_back({{{node.rect.lo[0], my}, {mx, node.rect.hi[1]}}, d});
    stack.push_back({{{mx, node.rect.lo[1]}, {node.rect.hi[0], my}}, d});
    stack.push_back({{node.rect.lo, {mx, my}}, d});
  }
  if (out.covering_size == 0) out.achieved_epsilon = 0.0;
  if (covering) covering->max_depth = out.max_depth_reached;
  return out;
}

}  // namespace diqkd
