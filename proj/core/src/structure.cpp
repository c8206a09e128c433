#include "bicolor/structure.hpp"

#include <algorithm>
#include <set>

#include "bicolor/error.hpp"

namespace bicolor {
namespace {

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (unsigned char c : id) {
    if (c < 0x21 || c > 0x7e || c == ',' || c == '=') return false;
  }
  return true;
}

}  // namespace

ColoredStructure::ColoredStructure(Alpha alpha, Backend backend, std::vector<GroundElement> elements)
    : alpha_(std::make_shared<const Alpha>(std::move(alpha))),
      elements_(std::move(elements)),
      k_plus_state_(std::make_shared<std::atomic<int>>(0)) {
  std::sort(elements_.begin(), elements_.end(),
            [](const GroundElement& x, const GroundElement& y) { return x.id < y.id; });
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    require(valid_id(elements_[i].id), ErrorCode::kSchema,
            "invalid element id '" + elements_[i].id + "'");
    require(i == 0 || elements_[i - 1].id != elements_[i].id, ErrorCode::kSchema,
            "duplicate element id '" + elements_[i].id + "'");
  }
  if (backend.kind == BackendKind::kFree) {
    for (const auto& e : elements_) {
      require(e.vec.empty(), ErrorCode::kSchema, "free backend element '" + e.id + "' has a vector");
    }
    geometry_ = std::make_shared<const Geometry>(Geometry::free(elements_.size()));
    return;
  }
  std::vector<std::vector<Rational>> payloads;
  payloads.reserve(elements_.size());
  for (auto& e : elements_) {
    for (auto& x : e.vec) x.canonicalize();
    payloads.push_back(e.vec);
  }
  geometry_ = std::make_shared<const Geometry>(Geometry::linear(backend.ambient_dim, payloads));
  // Distinct points must carry distinct payloads.
  std::vector<std::size_t> order = iota_set(elements_.size());
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return elements_[x].vec < elements_[y].vec; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    require(elements_[order[i - 1]].vec != elements_[order[i]].vec, ErrorCode::kInvalidInput,
            "elements '" + elements_[order[i - 1]].id + "' and '" + elements_[order[i]].id +
                "' share a payload");
  }
}

std::optional<std::size_t> ColoredStructure::find(std::string_view id) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), id,
                             [](const GroundElement& e, std::string_view v) { return e.id < v; });
  if (it == elements_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t ColoredStructure::index_of(std::string_view id) const {
  auto found = find(id);
  require(found.has_value(), ErrorCode::kUnknownElement, "unknown element id '" + std::string(id) + "'");
  return *found;
}

ElementSet ColoredStructure::set_of(const std::vector<std::string>& ids) const {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(index_of(id));
  return make_set(std::move(out));
}

std::vector<std::string> ColoredStructure::ids_of(const ElementSet& set) const {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (std::size_t i : set) out.push_back(elements_.at(i).id);
  return out;
}

ElementSet ColoredStructure::colored_part(const ElementSet& set) const {
  ElementSet out;
  for (std::size_t i : set) {
    if (elements_[i].colored) out.push_back(i);
  }
  return out;
}

std::int64_t ColoredStructure::color_count(const ElementSet& set) const {
  std::int64_t n = 0;
  for (std::size_t i : set) n += elements_[i].colored ? 1 : 0;
  return n;
}

std::optional<std::size_t> ColoredStructure::find_vector(const std::vector<Rational>& vec) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].vec == vec) return i;
  }
  return std::nullopt;
}

ColoredStructure ColoredStructure::restrict(const ElementSet& set) const {
  std::vector<GroundElement> kept;
  kept.reserve(set.size());
  for (std::size_t i : set) kept.push_back(elements_.at(i));
  return ColoredStructure(*alpha_, backend(), std::move(kept));
}

ColoredStructure ColoredStructure::extended(std::vector<GroundElement> extra,
                                            std::size_t new_ambient_dim) const {
  Backend b = backend();
  std::vector<GroundElement> all = elements_;
  if (b.kind == BackendKind::kLinear) {
    require(new_ambient_dim >= b.ambient_dim, ErrorCode::kInternal, "ambient dimension shrank");
    for (auto& e : all) e.vec.resize(new_ambient_dim, Rational(0));
    for (auto& e : extra) e.vec.resize(new_ambient_dim, Rational(0));
    b.ambient_dim = new_ambient_dim;
  }
  for (auto& e : extra) all.push_back(std::move(e));
  return ColoredStructure(*alpha_, b, std::move(all));
}

std::optional<bool> ColoredStructure::cached_k_plus() const {
  if (!k_plus_state_) return std::nullopt;
  int v = k_plus_state_->load();
  if (v == 0) return std::nullopt;
  return v == 1;
}

void ColoredStructure::cache_k_plus(bool value) const {
  if (k_plus_state_) k_plus_state_->store(value ? 1 : 2);
}

std::vector<std::string> fresh_ids(const ColoredStructure& s, std::string_view prefix,
                                   std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t n = 1; out.size() < count; ++n) {
    std::string id = std::string(prefix) + std::to_string(n);
    if (!s.find(id)) out.push_back(id);
  }
  return out;
}

}  // namespace bicolor
