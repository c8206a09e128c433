#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "bicolor/check.hpp"
#include "bicolor/exactnum.hpp"
#include "bicolor/structure.hpp"

namespace bicolor {

using Json = nlohmann::json;

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& j);

Json alpha_to_json(const Alpha& alpha);
Alpha alpha_from_json(const Json& j);
// A JSON object, or the shorthand "p/q" for a rational weight.
Alpha parse_alpha(std::string_view text);

Json structure_to_json(const ColoredStructure& s);
ColoredStructure structure_from_json(const Json& j);
ColoredStructure parse_structure(std::string_view text);
ColoredStructure load_structure(const std::string& path);
void save_structure(const ColoredStructure& s, const std::string& path);

// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

Json value_to_json(const PreDimValue& v);
Json value_to_json(const ExactValue& v);
Json pair_to_json(const ApproximationPair& p);
Json ids_to_json(const ColoredStructure& s, const ElementSet& set);
Json checks_to_json(const std::vector<Check>& checks);

// "a,b,c" -> ids; the empty string is the empty set.
std::vector<std::string> split_ids(std::string_view text);
// "a=x,b=y" -> map.
EmbeddingMap parse_map(std::string_view text);

}  // namespace bicolor
