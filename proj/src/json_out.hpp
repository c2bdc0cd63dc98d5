#pragma once

#include <string>

#include <json.hpp>

namespace qplane::detail {

/// Pretty-prints like nlohmann's dump(indent) but writes floating-point values
/// with %.17g and non-finite values as null.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace qplane::detail
