#include "gfp/runner/serialize.hpp"

#include <algorithm>
#include <string>

#include "gfp/numerics/errors.hpp"

namespace gfp::runner {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) throw ConfigError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

json faces_to_json(const std::vector<Halfspace>& faces) {
  json out = json::array();
  for (const auto& f : faces) out.push_back({{"normal", f.normal}, {"offset", f.offset}});
  return out;
}

}  // namespace

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

Point point_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + ": expected a non-empty array of numbers");
  Point p;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string(what) + ": expected numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

json to_json(const SetExpr& e) {
  return std::visit(
      Overloaded{
          [](const Halfspace& h) -> json { return {{"type", "halfspace"}, {"normal", h.normal}, {"offset", h.offset}}; },
          [](const Ball& b) -> json { return {{"type", "ball"}, {"center", b.center}, {"radius", b.radius}}; },
          [](const Box& b) -> json { return {{"type", "box"}, {"lo", b.lo}, {"hi", b.hi}}; },
          [](const Polytope& p) -> json { return {{"type", "polytope"}, {"faces", faces_to_json(p.faces)}}; },
          [](const Complement& c) -> json { return {{"type", "complement"}, {"of", to_json(c.child)}}; },
          [&](const Union& u) -> json {
            json of = json::array();
            for (const auto& c : u.children) of.push_back(to_json(c));
            return {{"type", "union"}, {"dim", e.dim()}, {"of", of}};
          },
          [&](const Intersection& in) -> json {
            json of = json::array();
            for (const auto& c : in.children) of.push_back(to_json(c));
            return {{"type", "intersection"}, {"dim", e.dim()}, {"of", of}};
          },
      },
      e.node().value);
}

SetExpr set_from_json(const json& j) {
  const std::string where = "set";
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ConfigError("set: expected an object with a string \"type\"");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "halfspace") {
      check_keys(j, {"type", "normal", "offset"}, "set(halfspace)");
      return SetExpr::halfspace(point_from_json(field(j, "normal", where), "set.normal"),
                                number(j, "offset", where));
    }
    if (type == "ball") {
      check_keys(j, {"type", "center", "radius"}, "set(ball)");
      return SetExpr::ball(point_from_json(field(j, "center", where), "set.center"), number(j, "radius", where));
    }
    if (type == "box") {
      check_keys(j, {"type", "lo", "hi"}, "set(box)");
      return SetExpr::box(point_from_json(field(j, "lo", where), "set.lo"),
                          point_from_json(field(j, "hi", where), "set.hi"));
    }
    if (type == "polytope") {
      check_keys(j, {"type", "faces"}, "set(polytope)");
      const json& faces = field(j, "faces", where);
      if (!faces.is_array()) throw ConfigError("set(polytope): \"faces\" must be an array");
      std::vector<Halfspace> hs;
      for (const auto& f : faces) {
        check_keys(f, {"normal", "offset"}, "set(polytope).faces");
        hs.push_back({point_from_json(field(f, "normal", where), "face.normal"), number(f, "offset", where)});
      }
      return SetExpr::polytope(std::move(hs));
    }
    if (type == "complement") {
      check_keys(j, {"type", "of"}, "set(complement)");
      return SetExpr::complement(set_from_json(field(j, "of", where)));
    }
    if (type == "union" || type == "intersection") {
      check_keys(j, {"type", "dim", "of"}, "set(" + type + ")");
      const json& d = field(j, "dim", where);
      if (!d.is_number_integer()) throw ConfigError("set: \"dim\" must be an integer");
      const json& of = field(j, "of", where);
      if (!of.is_array()) throw ConfigError("set: \"of\" must be an array");
      std::vector<SetExpr> children;
      for (const auto& c : of) children.push_back(set_from_json(c));
      return type == "union" ? SetExpr::union_of(d.get<int>(), std::move(children))
                             : SetExpr::intersection_of(d.get<int>(), std::move(children));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("set: ") + e.what());
  }
  throw ConfigError("set: unknown type \"" + type + "\"");
}

json to_json(const Domain& d) {
  switch (d.kind()) {
    case Domain::Kind::WholeSpace:
      return {{"type", "whole"}, {"dim", d.dim()}};
    case Domain::Kind::Ball:
      return {{"type", "ball"}, {"center", d.center()}, {"radius", d.radius()}};
    case Domain::Kind::Box:
      return {{"type", "box"}, {"lo", d.lo()}, {"hi", d.hi()}};
  }
  return {};
}

Domain domain_from_json(const json& j) {
  const std::string where = "domain";
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ConfigError("domain: expected an object with a string \"type\"");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "whole") {
      check_keys(j, {"type", "dim"}, "domain(whole)");
      const json& d = field(j, "dim", where);
      if (!d.is_number_integer()) throw ConfigError("domain: \"dim\" must be an integer");
      return Domain::whole(d.get<int>());
    }
    if (type == "ball") {
      check_keys(j, {"type", "center", "radius"}, "domain(ball)");
      return Domain::ball(point_from_json(field(j, "center", where), "domain.center"), number(j, "radius", where));
    }
    if (type == "box") {
      check_keys(j, {"type", "lo", "hi"}, "domain(box)");
      return Domain::box(point_from_json(field(j, "lo", where), "domain.lo"),
                         point_from_json(field(j, "hi", where), "domain.hi"));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
  throw ConfigError("domain: unknown type \"" + type + "\"");
}

}  // namespace gfp::runner
