// ============================================================================
// io.hpp — textual model format, abstraction maps, verdicts
// ============================================================================
//
// The grammar is documented in docs/format.md. parse/serialize are mutually
// inverse on canonical output: serialize(parse(serialize(parse(f)))) equals
// serialize(parse(f)) byte for byte, and parse(serialize(m)) reproduces m.

#pragma once

#include <string>

#include "apta/abstraction.hpp"
#include "apta/model.hpp"

namespace apta {

Model parse_model(const std::string& text, const std::string& origin = "<input>");
Model load_model(const std::string& path);
std::string serialize_model(const Model& m);
void save_model(const Model& m, const std::string& path);

std::vector<std::pair<std::string, std::string>> parse_abstraction_pairs(const std::string& text);
AbstractionMap load_abstraction_map(const std::string& path, const Model& m);

}  // namespace apta
