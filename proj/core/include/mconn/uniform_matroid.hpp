#pragma once

#include "mconn/rank_oracle.hpp"

namespace mconn {

/// U_{r,n}: every set of at most r elements is independent.
class UniformMatroid final : public RankOracle {
 public:
  UniformMatroid(int rank, int size);
  UniformMatroid(int rank, GroundSet ground);

  int uniform_rank() const noexcept { return rank_; }

  std::unique_ptr<IncrementalRank> incremental_rank() const override;
  OraclePtr clone_fresh() const override;

 protected:
  int rank_uncached(Subset x) const override;

 private:
  int rank_;
};

}  // namespace mconn
