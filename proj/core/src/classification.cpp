#include "mconn/classification.hpp"

#include <string>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

int kappa_in_minor(const OraclePtr& m, Subset q, Subset r, int e, MinorOp op,
                   const KappaOptions& options) {
  const auto view = remove_element(m, e, op);
  return kappa(*view, view->to_view(q), view->to_view(r), options).value;
}

PairClassification classify_known(const OraclePtr& m, Subset q, Subset r,
                                  int e, int kappa_qr,
                                  const KappaOptions& options) {
  const int after_delete = kappa_in_minor(m, q, r, e, MinorOp::Delete, options);
  const int after_contract =
      kappa_in_minor(m, q, r, e, MinorOp::Contract, options);
  return PairClassification{e, after_delete == kappa_qr,
                            after_contract == kappa_qr, after_delete,
                            after_contract};
}

void check_free_of_pair(const RankOracle& m, Subset q, Subset r, Subset f) {
  if (!f.subset_of(m.full_set())) {
    throw OutOfRange("elements to classify lie outside the ground set");
  }
  if (f.intersects(q | r)) {
    throw ElementInPair("cannot classify elements inside Q u R: " +
                        m.ground().format(f & (q | r)));
  }
}

}  // namespace

PairClassification classify(const OraclePtr& m, Subset q, Subset r, int e,
                            const KappaOptions& options) {
  check_free_of_pair(*m, q, r, Subset::single(e));
  const int kappa_qr = kappa(*m, q, r, options).value;
  return classify_known(m, q, r, e, kappa_qr, options);
}

std::vector<PairClassification> classify_all(const OraclePtr& m, Subset q,
                                             Subset r, Subset f,
                                             const KappaOptions& options) {
  check_free_of_pair(*m, q, r, f);
  std::vector<PairClassification> out;
  if (f.empty()) return out;
  const int kappa_qr = kappa(*m, q, r, options).value;
  for (int e : f) out.push_back(classify_known(m, q, r, e, kappa_qr, options));
  return out;
}

ReductionLog reduce_to_linking_minor(const OraclePtr& m, Subset q, Subset r,
                                     const KappaOptions& options) {
  if (q.intersects(r)) {
    throw OverlappingSets("Q and R intersect: " + to_string(q & r));
  }
  const int target = kappa(*m, q, r, options).value;
  ReductionLog log;
  Subset deleted, contracted;
  for (int e : (q | r).complement(m->size())) {
    const auto try_op = [&](MinorOp op) {
      const Subset del =
          deleted | (op == MinorOp::Delete ? Subset::single(e) : Subset());
      const Subset con =
          contracted | (op == MinorOp::Contract ? Subset::single(e) : Subset());
      const auto view = minor(m, del, con);
      return kappa(*view, view->to_view(q), view->to_view(r), options).value ==
             target;
    };
    // Deletion is preferred for flexible elements.
    if (try_op(MinorOp::Delete)) {
      deleted |= Subset::single(e);
      log.steps.push_back({e, MinorOp::Delete});
    } else if (try_op(MinorOp::Contract)) {
      contracted |= Subset::single(e);
      log.steps.push_back({e, MinorOp::Contract});
    } else {
      throw Error("delete/contract dichotomy failed for element " +
                  m->ground().label(e) +
                  "; the rank function is not a matroid rank function");
    }
  }
  log.result = minor(m, deleted, contracted);
  log.q_in_result = log.result->to_view(q);
  log.r_in_result = log.result->to_view(r);
  if (lambda(*log.result, log.q_in_result) != target) {
    throw Error("linking minor reduction lost the connectivity value");
  }
  return log;
}

LinkingPair shrink_to_linking_pair(const OraclePtr& m, Subset s, Subset t,
                                   const KappaOptions& options) {
  if (s.intersects(t)) {
    throw OverlappingSets("S and T intersect: " + to_string(s & t));
  }
  const int target = kappa(*m, s, t, options).value;
  Subset cur_s = s, cur_t = t;
  bool s_turn = true;
  while (cur_s.count() > target || cur_t.count() > target) {
    bool removed = false;
    for (int attempt = 0; attempt < 2 && !removed; ++attempt) {
      const bool on_s = (attempt == 0) ? s_turn : !s_turn;
      Subset& side = on_s ? cur_s : cur_t;
      if (side.count() <= target) continue;
      for (int e : side) {
        const Subset shrunk = side.without(e);
        const int value = on_s ? kappa(*m, shrunk, cur_t, options).value
                               : kappa(*m, cur_s, shrunk, options).value;
        if (value == target) {
          side = shrunk;
          s_turn = !on_s;  // alternate after an accepted removal
          removed = true;
          break;
        }
      }
    }
    if (!removed) {
      throw ShrinkStuck(
          "no single-element removal preserves kappa while a side exceeds "
          "size " +
          std::to_string(target));
    }
  }
  return {cur_s, cur_t};
}

}  // namespace mconn
