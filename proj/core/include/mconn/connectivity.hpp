#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "mconn/rank_oracle.hpp"

namespace mconn {

/// One side of a partition certifying a connectivity value: the Q-side set A
/// with Q <= A <= E - R, together with lambda(A).
struct Separation {
  Subset side;
  int lambda_value;

  bool operator==(const Separation&) const = default;
};

/// Result of a kappa computation. `witness` is the minimizing side; among all
/// minimizers it is the smallest in canonical subset order. `exhaustive` is
/// false only for early-stopped threshold probes, whose value is an upper
/// bound witnessed by `witness` rather than the exact minimum.
struct KappaResult {
  int value;
  Subset witness;
  bool exhaustive;
};

struct KappaOptions {
  int threads = 0;  // 0 = default_thread_count()
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Worker count used when callers pass threads = 0: the MCONN_THREADS
/// environment variable when set, otherwise the hardware concurrency.
int default_thread_count();

/// lambda(X) = r(X) + r(E - X) - r(E). Symmetric, self-dual, submodular.
int lambda(const RankOracle& m, Subset x);

/// Local connectivity of two disjoint sets: r(A) + r(B) - r(A u B).
/// Throws OverlappingSets when a and b intersect.
int sqcap(const RankOracle& m, Subset a, Subset b);

/// cl(X) = {e : r(X u e) = r(X)}. Contains X; idempotent.
Subset closure(const RankOracle& m, Subset x);

/// Closure in the dual matroid, computed from base ranks.
Subset coclosure(const RankOracle& m, Subset x);

/// kappa(Q, R) = min{lambda(X) : Q <= X <= E - R}, by exhaustive scan of the
/// free set E - Q - R in ascending mask order, pruned with the local-
/// connectivity lower bound. Multi-threaded scans partition the free mask by
/// its high-order bits and combine chunk results with a deterministic
/// (value, witness) lexicographic argmin, so the result is independent of
/// the thread count. Throws OverlappingSets / OutOfRange on bad inputs and
/// BudgetExhausted when a deadline was set and hit.
KappaResult kappa(const RankOracle& m, Subset q, Subset r,
                  const KappaOptions& options = {});

/// Early-stop probe: the first X (ascending mask order) with lambda(X) below
/// the threshold, or nullopt when kappa(Q, R) >= threshold. A returned
/// separation proves the minimum dropped; it need not attain it.
std::optional<Separation> kappa_drop_below(const RankOracle& m, Subset q,
                                           Subset r, int threshold,
                                           const KappaOptions& options = {});

/// All X with Q <= X <= E - R and lambda(X) <= order_bound - 1 (the Q-R-
/// separating sets of order at most order_bound), in ascending mask order.
std::vector<Separation> enumerate_separations(const RankOracle& m, Subset q,
                                              Subset r, int order_bound);

}  // namespace mconn
