#pragma once

#include <array>
#include <string>
#include <vector>

#include "mconn/connectivity.hpp"
#include "mconn/rank_oracle.hpp"

namespace mconn {

/// Which closure condition an element of a nested sequence satisfies at its
/// chain set A: membership in cl(A - f) and cl(E - A) (guts), or the same
/// with the dual closure (coguts).
enum class GutsBranch { Guts, Coguts };

inline const char* to_string(GutsBranch b) {
  return b == GutsBranch::Guts ? "guts" : "coguts";
}

/// A nested chain of Q-R-separating sets threading a set F of non-flexible
/// elements: ordering (f_1..f_n), chain (A_1..A_n) with
///   (i)   Q <= A_i <= E - R and lambda(A_i) <= kappa(Q, R),
///   (ii)  A_i <= A_{i+1},
///   (iii) A_i n F = {f_1..f_i},
///   (iv)  f_i in cl(A_i - f_i) n cl(E - A_i), or the coclosure variant.
struct NestedSequence {
  std::vector<int> ordering;
  std::vector<Subset> chain;
  std::vector<GutsBranch> branch;

  std::size_t length() const noexcept { return ordering.size(); }
};

/// Verification verdict: one entry per condition (i)-(iv), with the first
/// violating chain position (0-based, -1 when the condition holds).
struct SequenceReport {
  bool well_formed = true;
  std::string shape_problem;
  std::array<bool, 4> condition_pass{true, true, true, true};
  std::array<int, 4> first_violation{-1, -1, -1, -1};
  std::vector<std::string> warnings;

  bool all_pass() const noexcept {
    return well_formed && condition_pass[0] && condition_pass[1] &&
           condition_pass[2] && condition_pass[3];
  }
};

/// Builds a nested sequence for the non-flexible set f by backtracking over
/// (next element, next chain set) pairs drawn from the full list of
/// separations of order kappa(Q, R) + 1, visited in (element index, subset)
/// order. Throws FlexibleElement when some element of f is flexible with
/// respect to (Q, R), and CertificateNotFound when the search exhausts --
/// which existing theory rules out, so it signals an implementation bug.
NestedSequence build_nested_sequence(const OraclePtr& m, Subset q, Subset r,
                                     Subset f,
                                     const KappaOptions& options = {});

/// Checks conditions (i)-(iv) against the rank oracle only, trusting nothing
/// from the builder. Failures are reported, not thrown. Chain sets of order
/// strictly below kappa(Q, R) are reported as warnings.
SequenceReport verify_nested_sequence(const RankOracle& m, Subset q, Subset r,
                                      Subset f, const NestedSequence& cert,
                                      const KappaOptions& options = {});

}  // namespace mconn
