#pragma once

#include <json.hpp>

#include "cybmw/ring.hpp"

namespace cybmw {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j, const VarSetPtr& vars);

/// rationals as "num/den"; localized values as {"vars", "poly", "deltaPower"}
Json to_json(const RingValue& v);
RingValue ring_value_from_json(const Json& j);

}  // namespace cybmw
