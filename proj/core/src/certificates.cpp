#include "mconn/certificates.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "mconn/classification.hpp"
#include "mconn/errors.hpp"

namespace mconn {

namespace {

bool guts_holds(const RankOracle& m, int e, Subset a) {
  const Subset inside = a.without(e);
  const Subset outside = a.complement(m.size());
  return closure(m, inside).contains(e) && closure(m, outside).contains(e);
}

bool coguts_holds(const RankOracle& m, int e, Subset a) {
  const Subset inside = a.without(e);
  const Subset outside = a.complement(m.size());
  return coclosure(m, inside).contains(e) && coclosure(m, outside).contains(e);
}

struct Builder {
  const RankOracle& m;
  Subset f;
  const std::vector<Separation>& separations;  // ascending by side mask
  NestedSequence out;
  // Feasibility of a state depends only on the most recent chain set (it
  // fixes both the nesting constraint and the used prefix of F), so dead
  // states are memoized by that set alone.
  std::unordered_set<std::uint32_t> dead;

  bool extend(Subset a_prev, Subset used) {
    if (used == f) return true;
    if (dead.contains(a_prev.bits())) return false;
    for (int e : f - used) {
      const Subset want = used.with(e);
      for (const auto& sep : separations) {
        if (!a_prev.subset_of(sep.side)) continue;
        if ((sep.side & f) != want) continue;
        const bool guts = guts_holds(m, e, sep.side);
        const bool coguts = !guts && coguts_holds(m, e, sep.side);
        if (!guts && !coguts) continue;
        out.ordering.push_back(e);
        out.chain.push_back(sep.side);
        out.branch.push_back(guts ? GutsBranch::Guts : GutsBranch::Coguts);
        if (extend(sep.side, want)) return true;
        out.ordering.pop_back();
        out.chain.pop_back();
        out.branch.pop_back();
      }
    }
    dead.insert(a_prev.bits());
    return false;
  }
};

}  // namespace

NestedSequence build_nested_sequence(const OraclePtr& m, Subset q, Subset r,
                                     Subset f, const KappaOptions& options) {
  for (const auto& entry : classify_all(m, q, r, f, options)) {
    if (entry.flexible()) {
      throw FlexibleElement("element " + m->ground().label(entry.element) +
                            " is flexible with respect to (Q, R)");
    }
  }
  if (f.empty()) return {};
  const int k = kappa(*m, q, r, options).value;
  const auto separations = enumerate_separations(*m, q, r, k + 1);
  Builder builder{*m, f, separations, {}, {}};
  if (!builder.extend(Subset(), Subset())) {
    throw CertificateNotFound(
        "backtracking exhausted all candidate chains for a non-flexible set; "
        "this should be impossible and signals an implementation bug");
  }
  return std::move(builder.out);
}

SequenceReport verify_nested_sequence(const RankOracle& m, Subset q, Subset r,
                                      Subset f, const NestedSequence& cert,
                                      const KappaOptions& options) {
  SequenceReport report;
  const std::size_t n = static_cast<std::size_t>(f.count());
  if (cert.ordering.size() != n || cert.chain.size() != n ||
      cert.branch.size() != n) {
    report.well_formed = false;
    report.shape_problem = "sequence length does not match |F|";
    return report;
  }
  Subset seen;
  for (int e : cert.ordering) {
    if (!f.contains(e) || seen.contains(e)) {
      report.well_formed = false;
      report.shape_problem = "ordering is not a permutation of F";
      return report;
    }
    seen |= Subset::single(e);
  }

  const int k = kappa(m, q, r, options).value;
  const Subset rest = r.complement(m.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Subset a = cert.chain[i];
    // (i): Q-R-separating of order k+1
    if (report.condition_pass[0] &&
        !(q.subset_of(a) && a.subset_of(rest) && lambda(m, a) <= k)) {
      report.condition_pass[0] = false;
      report.first_violation[0] = static_cast<int>(i);
    }
    // (ii): nesting
    if (report.condition_pass[1] && i + 1 < n &&
        !a.subset_of(cert.chain[i + 1])) {
      report.condition_pass[1] = false;
      report.first_violation[1] = static_cast<int>(i);
    }
    // (iii): A_i n F is exactly the ordering prefix
    Subset prefix;
    for (std::size_t j = 0; j <= i; ++j) {
      prefix |= Subset::single(cert.ordering[j]);
    }
    if (report.condition_pass[2] && (a & f) != prefix) {
      report.condition_pass[2] = false;
      report.first_violation[2] = static_cast<int>(i);
    }
    // (iv): the recorded closure branch must hold
    const int e = cert.ordering[i];
    const bool holds = cert.branch[i] == GutsBranch::Guts
                           ? guts_holds(m, e, a)
                           : coguts_holds(m, e, a);
    if (report.condition_pass[3] && !holds) {
      report.condition_pass[3] = false;
      report.first_violation[3] = static_cast<int>(i);
    }
    if (lambda(m, a) < k) {
      report.warnings.push_back("chain set " + std::to_string(i) +
                                " has order below kappa(Q, R)");
    }
  }
  return report;
}

}  // namespace mconn
