#pragma once

#include "mconn/rank_oracle.hpp"

namespace mconn {

/// The dual matroid M* of a base oracle: r*(X) = |X| - r(E) + r(E - X).
/// Shares the base's ground set and keeps the base alive.
class DualView final : public RankOracle {
 public:
  explicit DualView(OraclePtr base);

  const OraclePtr& base() const noexcept { return base_; }

  OraclePtr clone_fresh() const override;

 protected:
  int rank_uncached(Subset x) const override;

 private:
  OraclePtr base_;
};

/// Dual of any oracle.
OraclePtr dual(OraclePtr m);

}  // namespace mconn
