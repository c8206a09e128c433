#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bicolor/exactnum.hpp"
#include "bicolor/pregeom.hpp"

namespace bicolor {

struct GroundElement {
  std::string id;
  std::vector<Rational> vec;  // empty for the free backend
  bool colored = false;
};

// Source id -> target id.
using EmbeddingMap = std::map<std::string, std::string>;

// A finite colored substructure of a model: points of the pregeometry, some
// of them colored, together with the weight alpha. Immutable once built;
// elements are kept sorted by id, so index order is id order.
class ColoredStructure {
 public:
  ColoredStructure() = default;
  ColoredStructure(Alpha alpha, Backend backend, std::vector<GroundElement> elements);

  const Alpha& alpha() const { return *alpha_; }
  const Backend& backend() const { return geometry_->backend(); }
  const Geometry& geometry() const { return *geometry_; }

  std::size_t size() const { return elements_.size(); }
  const GroundElement& element(std::size_t i) const { return elements_[i]; }
  const std::vector<GroundElement>& elements() const { return elements_; }
  bool is_colored(std::size_t i) const { return elements_[i].colored; }
  const std::string& id(std::size_t i) const { return elements_[i].id; }

  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // kUnknownElement if absent
  ElementSet set_of(const std::vector<std::string>& ids) const;
  std::vector<std::string> ids_of(const ElementSet& set) const;

  ElementSet all() const { return iota_set(size()); }
  ElementSet colored_part(const ElementSet& set) const;
  std::int64_t color_count(const ElementSet& set) const;

  // Index of an element whose payload equals vec exactly.
  std::optional<std::size_t> find_vector(const std::vector<Rational>& vec) const;

  // Substructure on the given elements (ids and payloads unchanged).
  ColoredStructure restrict(const ElementSet& set) const;
  // Copy with extra elements; payloads are zero-padded to new_ambient_dim.
  ColoredStructure extended(std::vector<GroundElement> extra, std::size_t new_ambient_dim) const;

  // Cached answer of in_k_plus; maintained by colored.cpp.
  std::optional<bool> cached_k_plus() const;
  void cache_k_plus(bool value) const;

 private:
  std::shared_ptr<const Alpha> alpha_;
  std::shared_ptr<const Geometry> geometry_;
  std::vector<GroundElement> elements_;
  std::shared_ptr<std::atomic<int>> k_plus_state_;
};

// Fresh ids "<prefix><n>" not clashing with the structure's ids.
std::vector<std::string> fresh_ids(const ColoredStructure& s, std::string_view prefix,
                                   std::size_t count);

}  // namespace bicolor
