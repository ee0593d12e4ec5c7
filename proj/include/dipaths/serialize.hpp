#pragma once

#include <string>
#include <vector>

#include "dipaths/acyclic.hpp"
#include "dipaths/digraph.hpp"
#include "dipaths/error.hpp"
#include "json.hpp"

namespace dipaths {

/// {"paths": [[v0, v1, ...], ...], "excess": int, "verified": bool}
inline nlohmann::json to_json(const Decomposition& dec) {
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& p : dec.family) paths.push_back(p.vertices);
  return {{"paths", paths}, {"excess", dec.host_excess}, {"verified", dec.verified}};
}

/// Reads the decomposition JSON. Only the paths are trusted to mean anything;
/// `verified` is reset and must be re-established with verify().
inline std::vector<Path> paths_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("paths") || !j["paths"].is_array()) {
    throw Error(ErrorCode::Parse, "expected an object with a \"paths\" array");
  }
  std::vector<Path> out;
  for (const auto& item : j["paths"]) {
    if (!item.is_array()) throw Error(ErrorCode::Parse, "each path must be an array of vertices");
    Path p;
    for (const auto& v : item) {
      if (!v.is_number_unsigned()) throw Error(ErrorCode::Parse, "vertices must be non-negative integers");
      p.vertices.push_back(v.get<Vertex>());
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<Path> parse_decomposition(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return paths_from_json(j);
}

}  // namespace dipaths
