#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "mconn/ground_set.hpp"
#include "mconn/subset.hpp"

namespace mconn {

class RankOracle;

/// Shared handle to an immutable oracle. Views (dual, minor) keep their base
/// alive through this.
using OraclePtr = std::shared_ptr<const RankOracle>;

/// Incremental rank of a growing element set, with stack discipline: push
/// adds one element, pop undoes the most recent push. Subset-enumeration
/// searches walk the lattice through this interface so concrete matroids can
/// maintain rank in O(1)-ish per step instead of recomputing from scratch.
class IncrementalRank {
 public:
  virtual ~IncrementalRank() = default;

  virtual void push(int element) = 0;
  virtual void pop() = 0;
  virtual int rank() const = 0;
};

/// A matroid given by its rank function over a fixed ground set.
///
/// Oracles are immutable after construction and safe to share across threads;
/// the internal memo table only ever stores values already determined by the
/// rank function, so concurrent duplicate inserts are harmless.
class RankOracle {
 public:
  /// Memo tables are allocated all-or-nothing: a flat table of 2^size entries
  /// when size <= kMemoMaxBits, nothing above that.
  static constexpr int kMemoMaxBits = 26;

  explicit RankOracle(GroundSet ground);
  virtual ~RankOracle() = default;

  RankOracle(const RankOracle&) = delete;
  RankOracle& operator=(const RankOracle&) = delete;

  const GroundSet& ground() const noexcept { return ground_; }
  int size() const noexcept { return ground_.size(); }
  Subset full_set() const noexcept { return ground_.full(); }

  /// Rank of the subset; memoized per oracle instance.
  /// Throws OutOfRange when x is not within the ground set.
  int rank(Subset x) const;

  /// r(E), cached.
  int full_rank() const;

  /// Incremental-rank session starting from the empty set. The default walks
  /// through rank(); concrete matroids override with cheaper structures.
  virtual std::unique_ptr<IncrementalRank> incremental_rank() const;

  /// A behaviorally identical oracle sharing no caches with this one.
  virtual OraclePtr clone_fresh() const = 0;

 protected:
  /// The actual rank function; called on cache misses only.
  virtual int rank_uncached(Subset x) const = 0;

 private:
  GroundSet ground_;
  mutable std::once_flag memo_init_;
  mutable std::vector<std::int8_t> memo_;  // -1 = unset; empty above the cap
  mutable std::atomic<int> full_rank_{-1};
};

/// Checks the four rank axioms on every subset (and every subset pair, for
/// submodularity) of a small oracle. Rejects oracles larger than 14 elements;
/// the pairwise scan is 4^n. Throws Error naming the first violated axiom.
void validate_rank_axioms(const RankOracle& m);

}  // namespace mconn
