#pragma once

#include <vector>

#include "mconn/connectivity.hpp"
#include "mconn/minor_view.hpp"
#include "mconn/rank_oracle.hpp"

namespace mconn {

/// How a single free element behaves with respect to a pair (Q, R): whether
/// deleting or contracting it keeps kappa(Q, R) unchanged. At least one of
/// the two always holds; an element with both is flexible.
struct PairClassification {
  int element;
  bool deletable;
  bool contractible;
  int kappa_after_delete;
  int kappa_after_contract;

  bool flexible() const noexcept { return deletable && contractible; }

  bool operator==(const PairClassification&) const = default;
};

/// Classifies e with respect to (Q, R), recomputing kappa exactly in both
/// single-element minors. Throws ElementInPair when e lies in Q u R.
PairClassification classify(const OraclePtr& m, Subset q, Subset r, int e,
                            const KappaOptions& options = {});

/// Classifies every element of f in ascending index order.
/// Throws ElementInPair when f touches Q u R.
std::vector<PairClassification> classify_all(const OraclePtr& m, Subset q,
                                             Subset r, Subset f,
                                             const KappaOptions& options = {});

/// A replayable reduction of M to a minor: the steps in application order
/// (element indices refer to the ground set current at that step's
/// application, which for this log always equals the base ground set) and
/// the resulting view over the base oracle.
struct ReductionLog {
  std::vector<ElementOp> steps;
  std::shared_ptr<const MinorView> result;
  Subset q_in_result;
  Subset r_in_result;
};

/// Removes every element outside Q u R, one at a time in ascending index
/// order, deleting when deletion preserves kappa(Q, R) and contracting
/// otherwise; either always works. The resulting minor N has ground set
/// Q u R and lambda_N(Q) = kappa_M(Q, R), the minor form of Tutte's linking
/// theorem.
ReductionLog reduce_to_linking_minor(const OraclePtr& m, Subset q, Subset r,
                                     const KappaOptions& options = {});

/// Shrinks S and T to subsets S1, T1 with |S1| = |T1| = kappa(S1, T1) =
/// kappa(S, T), greedily removing the smallest-index element whose removal
/// keeps kappa unchanged, alternating sides. Throws ShrinkStuck if no
/// removal preserves kappa while a side still exceeds the target size
/// (which would signal an implementation bug).
struct LinkingPair {
  Subset s1;
  Subset t1;
};
LinkingPair shrink_to_linking_pair(const OraclePtr& m, Subset s, Subset t,
                                   const KappaOptions& options = {});

}  // namespace mconn
