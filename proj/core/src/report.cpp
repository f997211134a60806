#include "diqkd/report.hpp"

#include "diqkd/errors.hpp"

namespace diqkd {

Json to_json(const Rect& r) {
  return Json{{"lo", {r.lo[0], r.lo[1]}}, {"hi", {r.hi[0], r.hi[1]}}};
}

Json to_json(const AffineBound& b) {
  Json j;
  j["candidate"] = {{"beta", b.beta}, {"alpha", {b.alpha[0], b.alpha[1]}}, {"epsilon", b.epsilon}};
  j["status"] = to_string(b.status);
  j["achieved_epsilon"] = b.achieved_epsilon;
  j["covering_size"] = b.covering_size;
  j["discarded"] = b.discarded;
  j["max_depth_reached"] = b.max_depth_reached;
  if (!b.limit_reason.empty()) j["limit_reason"] = b.limit_reason;
  if (b.witness) {
    j["witness"] = to_json(*b.witness);
    j["witness_gap"] = b.witness_gap;
  }
  return j;
}

Json to_json(const Implementation& impl) {
  return Json{{"theta", impl.theta},
              {"phiA", {impl.phiA[0], impl.phiA[1]}},
              {"phiB", {impl.phiB[0], impl.phiB[1], impl.phiB[2]}},
              {"v", impl.v},
              {"eta", impl.eta}};
}

Implementation implementation_from_json(const Json& j) {
  Implementation impl;
  try {
    impl.theta = j.at("theta").get<double>();
    const auto& a = j.at("phiA");
    const auto& b = j.at("phiB");
    if (a.size() != 2 || b.size() != 3) throw DomainError("Implementation JSON: wrong angle count");
    impl.phiA = {a[0].get<double>(), a[1].get<double>()};
    impl.phiB = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
    impl.v = j.value("v", 1.0);
    impl.eta = j.value("eta", 1.0);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("Implementation JSON: ") + e.what());
  }
  impl.validate();
  return impl;
}

Json to_json(const RateResult& r) {
  return Json{{"rate", r.rate},
              {"entropy_bound", r.entropy_bound},
              {"H_cond", r.H_cond},
              {"sift", r.sift},
              {"certified", r.certified},
              {"epsilon", r.achieved_epsilon},
              {"covering_size", r.covering_size}};
}

Json to_json(const Statistics& s) {
  Json table = Json::array();
  for (const auto& row : s.key_joint) table.push_back({row[0], row[1], row[2]});
  return Json{{"S", s.S}, {"a1", s.a1}, {"key_joint", table}, {"H_A_given_B", s.H_A_given_B}};
}

}  // namespace diqkd
