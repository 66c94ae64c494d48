#pragma once

#include <memory>
#include <vector>

#include "mconn/rank_oracle.hpp"

namespace mconn {

/// delete vs contract, the two single-element reductions.
enum class MinorOp { Delete, Contract };

inline const char* to_string(MinorOp op) {
  return op == MinorOp::Delete ? "delete" : "contract";
}

/// One logged reduction step; element indices refer to the ground set the
/// step was applied in.
struct ElementOp {
  int element;
  MinorOp op;

  bool operator==(const ElementOp&) const = default;
};

/// The minor M \ deleted / contracted of a base oracle.
///
/// The view's ground set consists of the surviving base elements with their
/// labels, relabeled order-preservingly to 0..size-1, so the canonical subset
/// order survives taking minors. rank_view(X) = r(X u C) - r(C).
class MinorView final : public RankOracle {
 public:
  /// Throws OverlappingSets when deleted and contracted intersect.
  MinorView(OraclePtr base, Subset deleted, Subset contracted);

  const OraclePtr& base() const noexcept { return base_; }
  Subset deleted() const noexcept { return deleted_; }
  Subset contracted() const noexcept { return contracted_; }

  /// Base index of view element i.
  int base_element(int view_index) const;
  /// View index of base element e; throws OutOfRange when e did not survive.
  int view_element(int base_index) const;

  /// Maps a subset of view indices to base indices.
  Subset to_base(Subset view_set) const;
  /// Maps a subset of surviving base elements to view indices; throws
  /// OutOfRange when the set touches a removed element.
  Subset to_view(Subset base_set) const;

  std::unique_ptr<IncrementalRank> incremental_rank() const override;
  OraclePtr clone_fresh() const override;

 protected:
  int rank_uncached(Subset x) const override;

 private:
  OraclePtr base_;
  Subset deleted_;
  Subset contracted_;
  int contracted_rank_;
  std::vector<int> to_base_index_;   // view index -> base index, ascending
  std::vector<int> to_view_index_;   // base index -> view index or -1
};

/// Minor of any oracle; deleted/contracted are indices of m's ground set,
/// and the returned view's maps translate between m and the minor. Views of
/// views nest.
std::shared_ptr<const MinorView> minor(const OraclePtr& m, Subset deleted,
                                       Subset contracted);

/// Single-element convenience: delete or contract e.
std::shared_ptr<const MinorView> remove_element(const OraclePtr& m, int e,
                                                MinorOp op);

}  // namespace mconn
