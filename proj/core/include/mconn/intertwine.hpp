#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mconn/classification.hpp"
#include "mconn/connectivity.hpp"
#include "mconn/errors.hpp"
#include "mconn/minor_view.hpp"
#include "mconn/rank_oracle.hpp"

namespace mconn {

/// A matroid together with two disjoint pairs (Q, R) and (S, T). Q may meet
/// S or T; only Q n R and S n T must be empty. Both connectivities are
/// computed exactly at construction; the free set E - (Q u R u S u T) is
/// always derived on demand.
class IntertwineInstance {
 public:
  IntertwineInstance(OraclePtr m, Subset q, Subset r, Subset s, Subset t,
                     const KappaOptions& options = {});

  const OraclePtr& oracle() const noexcept { return m_; }
  Subset q() const noexcept { return q_; }
  Subset r() const noexcept { return r_; }
  Subset s() const noexcept { return s_; }
  Subset t() const noexcept { return t_; }

  Subset free_set() const noexcept {
    return (q_ | r_ | s_ | t_).complement(m_->size());
  }

  int kappa_qr() const noexcept { return kappa_qr_; }
  int kappa_st() const noexcept { return kappa_st_; }

 private:
  OraclePtr m_;
  Subset q_, r_, s_, t_;
  int kappa_qr_;
  int kappa_st_;
};

/// Free-set size above which a both-connectivities-preserving element is
/// guaranteed to exist: (2l + 1) * 2^(2k + 1). Saturates at INT64_MAX.
std::int64_t c_bound(int k, int l);

/// Conjectured tight threshold: 2kl - k - l + 1.
std::int64_t conjecture_bound(int k, int l);

/// Raised when no qualifying element exists although the free set meets
/// c_bound -- which contradicts proved theory, so any occurrence is a bug
/// alarm and must be preserved for independent re-verification.
class TheoremViolation : public Error {
 public:
  TheoremViolation(std::string message, IntertwineInstance instance)
      : Error(std::move(message)), instance_(std::move(instance)) {}

  const IntertwineInstance& instance() const noexcept { return instance_; }

 private:
  IntertwineInstance instance_;
};

struct SearchOptions {
  int threads = 0;
  /// Mirror the two-stage argument: first shrink (S, T) to a linking pair
  /// (S1, T1), search against that pair, and iterate removals of qualifying
  /// elements from (S u T) - (S1 u T1) until one lands in the free set.
  bool proof_path = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  KappaOptions kappa() const { return {threads, deadline}; }
};

/// Outcome of the intertwined-element search. When element is set, both
/// connectivities are preserved in the chosen minor (after-values equal the
/// before-values, recomputed in the minor). `guaranteed` records whether the
/// free set was large enough for existence to be guaranteed.
struct IntertwineReport {
  std::optional<int> element;
  std::optional<MinorOp> operation;
  int kappa_qr_before = 0;
  int kappa_st_before = 0;
  std::optional<int> kappa_qr_after;
  std::optional<int> kappa_st_after;
  bool guaranteed = false;
  /// Internal removals taken by the proof path before the reported element
  /// was found (base-oracle indices); empty for the direct scan.
  std::vector<ElementOp> proof_trace;
};

/// Scans the free set in ascending index order, deletion before contraction,
/// for the first element whose removal preserves both kappa(Q, R) and
/// kappa(S, T). Candidates are screened with early-stop threshold probes and
/// the winner is re-verified with exhaustive scans on fresh oracles. Throws
/// TheoremViolation when nothing qualifies but |F| >= c_bound(k, l).
IntertwineReport find_intertwined_element(const IntertwineInstance& instance,
                                          const SearchOptions& options = {});

/// Independent check that removing e (which must be free) with op preserves
/// both connectivities: fresh oracle clone, no shared caches, exhaustive
/// kappa. Throws ElementNotFree when e is not in the free set.
bool verify_intertwined(const IntertwineInstance& instance, int e, MinorOp op,
                        int threads = 0);

/// Repeatedly applies find_intertwined_element and the chosen operation until
/// no qualifying element remains. Every step is re-verified; element indices
/// in the log refer to the original ground set.
struct ShrinkOutcome {
  std::shared_ptr<const MinorView> result;
  std::vector<ElementOp> log;
  /// Free-set size left in the result vs the guarantee threshold; always
  /// consistent on normal return (the alarm path throws instead).
  bool consistent;
};
ShrinkOutcome shrink_preserving_both(const IntertwineInstance& instance,
                                     const SearchOptions& options = {});

}  // namespace mconn
