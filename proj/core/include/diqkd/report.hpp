#pragma once

#include <nlohmann/json.hpp>

#include "diqkd/certify.hpp"
#include "diqkd/keyrate.hpp"
#include "diqkd/models.hpp"

// JSON views of the library's result types. Key order is fixed.

namespace diqkd {

using Json = nlohmann::ordered_json;

Json to_json(const Rect& r);
Json to_json(const AffineBound& b);
Json to_json(const Implementation& impl);
Implementation implementation_from_json(const Json& j);
Json to_json(const RateResult& r);
Json to_json(const Statistics& s);

}  // namespace diqkd
