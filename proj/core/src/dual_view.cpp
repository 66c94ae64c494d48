#include "mconn/dual_view.hpp"

#include "mconn/errors.hpp"

namespace mconn {

DualView::DualView(OraclePtr base)
    : RankOracle(base ? base->ground() : throw Error("null base oracle")),
      base_(std::move(base)) {}

int DualView::rank_uncached(Subset x) const {
  return x.count() - base_->full_rank() +
         base_->rank(x.complement(size()));
}

OraclePtr DualView::clone_fresh() const {
  return std::make_shared<DualView>(base_->clone_fresh());
}

OraclePtr dual(OraclePtr m) {
  return std::make_shared<DualView>(std::move(m));
}

}  // namespace mconn
