#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace mconn {

/// A subset of a ground set with at most 32 elements, stored as one machine
/// word. Element i belongs to the set iff bit i is set.
///
/// The numeric value of the word, with index 0 least significant, is the
/// canonical total order on subsets. Every tie-break in the library (kappa
/// witnesses, candidate orders, certificate chains) uses this order, so
/// results are reproducible across runs and thread counts.
class Subset {
 public:
  constexpr Subset() noexcept = default;
  constexpr explicit Subset(std::uint32_t bits) noexcept : bits_(bits) {}

  static constexpr Subset single(int element) noexcept {
    return Subset(std::uint32_t{1} << element);
  }

  /// The full set {0, ..., size-1}.
  static constexpr Subset full(int size) noexcept {
    return size >= 32 ? Subset(~std::uint32_t{0})
                      : Subset((std::uint32_t{1} << size) - 1);
  }

  constexpr std::uint32_t bits() const noexcept { return bits_; }

  constexpr bool contains(int element) const noexcept {
    return (bits_ >> element) & 1u;
  }

  constexpr int count() const noexcept { return std::popcount(bits_); }
  constexpr bool empty() const noexcept { return bits_ == 0; }

  constexpr Subset with(int element) const noexcept {
    return Subset(bits_ | (std::uint32_t{1} << element));
  }
  constexpr Subset without(int element) const noexcept {
    return Subset(bits_ & ~(std::uint32_t{1} << element));
  }

  constexpr bool subset_of(Subset other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(Subset other) const noexcept {
    return (bits_ & other.bits_) != 0;
  }

  /// Complement within {0, ..., universe_size-1}.
  constexpr Subset complement(int universe_size) const noexcept {
    return Subset(~bits_ & full(universe_size).bits_);
  }

  /// Index of the smallest element; undefined on the empty set.
  constexpr int min_element() const noexcept { return std::countr_zero(bits_); }

  friend constexpr Subset operator|(Subset a, Subset b) noexcept {
    return Subset(a.bits_ | b.bits_);
  }
  friend constexpr Subset operator&(Subset a, Subset b) noexcept {
    return Subset(a.bits_ & b.bits_);
  }
  friend constexpr Subset operator-(Subset a, Subset b) noexcept {
    return Subset(a.bits_ & ~b.bits_);
  }
  friend constexpr Subset operator^(Subset a, Subset b) noexcept {
    return Subset(a.bits_ ^ b.bits_);
  }

  Subset& operator|=(Subset o) noexcept { bits_ |= o.bits_; return *this; }
  Subset& operator&=(Subset o) noexcept { bits_ &= o.bits_; return *this; }
  Subset& operator-=(Subset o) noexcept { bits_ &= ~o.bits_; return *this; }

  friend constexpr bool operator==(Subset a, Subset b) noexcept = default;
  /// Canonical subset order (numeric mask order).
  friend constexpr auto operator<=>(Subset a, Subset b) noexcept {
    return a.bits_ <=> b.bits_;
  }

  /// Iterates elements in ascending index order.
  class iterator {
   public:
    constexpr explicit iterator(std::uint32_t rest) noexcept : rest_(rest) {}
    constexpr int operator*() const noexcept { return std::countr_zero(rest_); }
    constexpr iterator& operator++() noexcept {
      rest_ &= rest_ - 1;  // clear lowest set bit
      return *this;
    }
    friend constexpr bool operator==(iterator, iterator) noexcept = default;

   private:
    std::uint32_t rest_;
  };

  constexpr iterator begin() const noexcept { return iterator(bits_); }
  constexpr iterator end() const noexcept { return iterator(0); }

 private:
  std::uint32_t bits_ = 0;
};

inline std::string to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : s) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace mconn
