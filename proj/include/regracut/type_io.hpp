#pragma once

#include "regracut/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace regracut {

// Type files are JSON:
//
//   {"kind":"rtype","r":2,"k":2,"self":[[1],[2]],
//    "edges":[{"u":0,"v":1,"labels":[1,2]}]}
//
// r-type colors are 1-based. Dir-types carry "palette" instead of "r" and
// list state tokens (none, bi, fwd, back) read from u towards v. An edge
// given only as (u,v) is mirrored onto (v,u); when both directions are
// listed each is stored as written, so validate_type can reject them.

nlohmann::json type_to_json(const TypeGraph & k);
/// Throws ParseError; labels are not validated.
TypeGraph type_from_json(const nlohmann::json & doc);

/// {"kind":..,"r" or "palette":..,"size_bound":..,"types":[...]}
nlohmann::json family_to_json(const TypeFamily & family);
TypeFamily family_from_json(const nlohmann::json & doc);

std::string type_to_text(const TypeGraph & k);
TypeGraph type_from_text(const std::string & text);

TypeGraph load_type(const std::filesystem::path & path);
void save_type(const std::filesystem::path & path, const TypeGraph & k);

} // namespace regracut
