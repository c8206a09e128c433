#include "bicolor/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "bicolor/error.hpp"

namespace bicolor {
namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::kSchema, path + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

void no_extra_fields(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) schema_error(path, "unknown field '" + key + "'");
  }
}

BigInt integer_field(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  const std::string where = path + "." + key;
  if (v.is_number_integer()) return BigInt(v.dump());
  if (v.is_string()) {
    try {
      return parse_integer(v.get<std::string>());
    } catch (const Error& e) {
      schema_error(where, e.detail());
    }
  }
  schema_error(where, "expected an integer");
}

Json integer_json(const BigInt& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.get_str();
}

}  // namespace

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json alpha_to_json(const Alpha& alpha) {
  if (alpha.is_rational()) {
    return {{"kind", "rational"}, {"num", integer_json(alpha.num())}, {"den", integer_json(alpha.den())}};
  }
  return {{"kind", "quadratic"},
          {"a", integer_json(alpha.a())},
          {"b", integer_json(alpha.b())},
          {"c", integer_json(alpha.c())},
          {"d", integer_json(alpha.d())}};
}

Alpha alpha_from_json(const Json& j) {
  const std::string path = "alpha";
  const Json& kind = field(j, "kind", path);
  if (kind == "rational") {
    no_extra_fields(j, {"kind", "num", "den"}, path);
    return Alpha::rational(integer_field(j, "num", path), integer_field(j, "den", path));
  }
  if (kind == "quadratic") {
    no_extra_fields(j, {"kind", "a", "b", "c", "d"}, path);
    return Alpha::quadratic(integer_field(j, "a", path), integer_field(j, "b", path),
                            integer_field(j, "c", path), integer_field(j, "d", path));
  }
  schema_error(path + ".kind", "expected \"rational\" or \"quadratic\"");
}

Alpha parse_alpha(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      fail(ErrorCode::kSchema, std::string("alpha: ") + e.what());
    }
    return alpha_from_json(j);
  }
  const Rational r = parse_rational(text);
  return Alpha::rational(r.get_num(), r.get_den());
}

Json structure_to_json(const ColoredStructure& s) {
  Json backend;
  if (s.backend().kind == BackendKind::kLinear) {
    backend = {{"kind", "linear"}, {"ambientDim", s.backend().ambient_dim}};
  } else {
    backend = {{"kind", "free"}};
  }
  Json elements = Json::array();
  for (const auto& e : s.elements()) {
    Json item = {{"id", e.id}, {"colored", e.colored}};
    if (s.backend().kind == BackendKind::kLinear) {
      Json vec = Json::array();
      for (const auto& x : e.vec) vec.push_back(format_rational(x));
      item["vec"] = std::move(vec);
    }
    elements.push_back(std::move(item));
  }
  return {{"alpha", alpha_to_json(s.alpha())}, {"backend", std::move(backend)},
          {"elements", std::move(elements)}};
}

ColoredStructure structure_from_json(const Json& j) {
  if (!j.is_object()) schema_error("$", "expected an object");
  no_extra_fields(j, {"alpha", "backend", "elements"}, "$");
  Alpha alpha = alpha_from_json(field(j, "alpha", "$"));
  const Json& b = field(j, "backend", "$");
  const Json& kind = field(b, "kind", "backend");
  Backend backend;
  if (kind == "linear") {
    no_extra_fields(b, {"kind", "ambientDim"}, "backend");
    const Json& dim = field(b, "ambientDim", "backend");
    if (!dim.is_number_unsigned()) schema_error("backend.ambientDim", "expected a natural number");
    backend = Backend::linear(dim.get<std::size_t>());
  } else if (kind == "free") {
    no_extra_fields(b, {"kind"}, "backend");
    backend = Backend::free();
  } else {
    schema_error("backend.kind", "expected \"linear\" or \"free\"");
  }
  const Json& elems = field(j, "elements", "$");
  if (!elems.is_array()) schema_error("elements", "expected an array");
  std::vector<GroundElement> elements;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::string path = "elements[" + std::to_string(i) + "]";
    const Json& e = elems[i];
    GroundElement g;
    const Json& id = field(e, "id", path);
    if (!id.is_string()) schema_error(path + ".id", "expected a string");
    g.id = id.get<std::string>();
    const Json& colored = field(e, "colored", path);
    if (!colored.is_boolean()) schema_error(path + ".colored", "expected a boolean");
    g.colored = colored.get<bool>();
    if (backend.kind == BackendKind::kLinear) {
      no_extra_fields(e, {"id", "colored", "vec"}, path);
      const Json& vec = field(e, "vec", path);
      if (!vec.is_array()) schema_error(path + ".vec", "expected an array");
      if (vec.size() != backend.ambient_dim) {
        fail(ErrorCode::kDimensionMismatch, path + ".vec: length " + std::to_string(vec.size()) +
                                                " differs from ambientDim " +
                                                std::to_string(backend.ambient_dim));
      }
      for (std::size_t c = 0; c < vec.size(); ++c) {
        const std::string where = path + ".vec[" + std::to_string(c) + "]";
        if (vec[c].is_number_integer()) {
          g.vec.emplace_back(BigInt(vec[c].dump()));
        } else if (vec[c].is_string()) {
          try {
            g.vec.push_back(parse_rational(vec[c].get<std::string>()));
          } catch (const Error& err) {
            schema_error(where, err.detail());
          }
        } else {
          schema_error(where, "expected a rational string");
        }
      }
    } else {
      no_extra_fields(e, {"id", "colored"}, path);
    }
    elements.push_back(std::move(g));
  }
  return ColoredStructure(std::move(alpha), backend, std::move(elements));
}

ColoredStructure parse_structure(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kSchema, e.what());
  }
  return structure_from_json(j);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::kInvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::kInvalidInput, "cannot write '" + path + "'");
  out << text;
}

ColoredStructure load_structure(const std::string& path) {
  try {
    return parse_structure(read_text(path));
  } catch (const Error& e) {
    if (e.detail().rfind("cannot open", 0) == 0) throw;
    throw Error(e.code(), path + ": " + e.detail());
  }
}

void save_structure(const ColoredStructure& s, const std::string& path) {
  write_text(path, dump_canonical(structure_to_json(s)));
}

Json value_to_json(const PreDimValue& v) {
  return {{"dim", v.dim}, {"color", v.color}, {"value", v.to_string()}};
}

Json value_to_json(const ExactValue& v) {
  return {{"dim", integer_json(v.dim)},
          {"color", integer_json(v.color)},
          {"denom", integer_json(v.denom)},
          {"value", v.to_string()}};
}

Json pair_to_json(const ApproximationPair& p) {
  return {{"s", integer_json(p.s)}, {"k", integer_json(p.k)}};
}

Json ids_to_json(const ColoredStructure& s, const ElementSet& set) {
  Json out = Json::array();
  for (const auto& id : s.ids_of(set)) out.push_back(id);
  return out;
}

Json checks_to_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    Json item = {{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) item["witness"] = c.witness;
    if (!c.detail.empty()) item["detail"] = c.detail;
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<std::string> split_ids(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    require(!part.empty(), ErrorCode::kSchema, "empty id in list '" + std::string(text) + "'");
    out.emplace_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

EmbeddingMap parse_map(std::string_view text) {
  EmbeddingMap out;
  for (const auto& pair : split_ids(text)) {
    const std::size_t eq = pair.find('=');
    require(eq != std::string::npos && eq > 0 && eq + 1 < pair.size(), ErrorCode::kSchema,
            "malformed map entry '" + pair + "'");
    require(out.emplace(pair.substr(0, eq), pair.substr(eq + 1)).second, ErrorCode::kSchema,
            "map entry for '" + pair.substr(0, eq) + "' repeated");
  }
  return out;
}

}  // namespace bicolor
