#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mconn/subset.hpp"

namespace mconn {

/// The element universe of a matroid: a size and a list of distinct labels,
/// index-aligned. Capped at 32 elements so that every subset fits in one
/// machine word (subset enumeration dominates every cost in this library).
class GroundSet {
 public:
  static constexpr int kMaxElements = 32;

  /// Default labels "0", "1", ..., "size-1".
  explicit GroundSet(int size);

  /// Labels must be distinct and non-empty; size is labels.size().
  explicit GroundSet(std::vector<std::string> labels);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  Subset full() const noexcept { return Subset::full(size()); }

  const std::string& label(int element) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<int> index_of(std::string_view label) const;

  /// Renders a subset as "{a,b,c}" using element labels.
  std::string format(Subset s) const;

  bool operator==(const GroundSet& other) const = default;

 private:
  void validate() const;

  std::vector<std::string> labels_;
};

}  // namespace mconn
