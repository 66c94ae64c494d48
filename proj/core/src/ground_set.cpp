#include "mconn/ground_set.hpp"

#include <unordered_set>

#include "mconn/errors.hpp"

namespace mconn {

GroundSet::GroundSet(int size) {
  if (size < 0) throw Error("ground-set size must be non-negative");
  labels_.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) labels_.push_back(std::to_string(i));
  validate();
}

GroundSet::GroundSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  validate();
}

void GroundSet::validate() const {
  if (size() > kMaxElements) {
    throw CapExceeded("ground set has " + std::to_string(labels_.size()) +
                      " elements; at most " + std::to_string(kMaxElements) +
                      " are supported");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw Error("element labels must be non-empty");
    if (!seen.insert(label).second) {
      throw Error("duplicate element label: " + label);
    }
  }
}

const std::string& GroundSet::label(int element) const {
  if (element < 0 || element >= size()) {
    throw OutOfRange("element index " + std::to_string(element) +
                     " outside ground set of size " + std::to_string(size()));
  }
  return labels_[static_cast<std::size_t>(element)];
}

std::optional<int> GroundSet::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels_[static_cast<std::size_t>(i)] == label) return i;
  }
  return std::nullopt;
}

std::string GroundSet::format(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (int e : s) {
    if (!first) out += ",";
    out += label(e);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace mconn
