#pragma once

#include <json.hpp>

#include "gfp/geometry/domain.hpp"
#include "gfp/geometry/set_expr.hpp"

namespace gfp::runner {

using json = nlohmann::json;

/// Thrown for malformed or schema-violating configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"type": "halfspace", "normal": [...], "offset": a}, "ball", "box",
/// "polytope", "complement" ("of": set), "union"/"intersection" ("dim", "of": [...]).
json to_json(const SetExpr& e);
SetExpr set_from_json(const json& j);

/// {"type": "whole", "dim": n}, {"type": "ball", "center", "radius"}, {"type": "box", "lo", "hi"}.
json to_json(const Domain& d);
Domain domain_from_json(const json& j);

Point point_from_json(const json& j, const char* what);

/// Rejects keys of obj outside `allowed`.
void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

}  // namespace gfp::runner
