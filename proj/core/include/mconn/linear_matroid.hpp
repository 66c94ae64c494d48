#pragma once

#include <cstdint>
#include <vector>

#include "mconn/rank_oracle.hpp"

namespace mconn {

/// Column matroid of an r x n matrix over a prime field GF(p), p in {2,3,5}.
/// Element j is column j. GF(2) ranks go through a bitset elimination kernel
/// (one word per column); GF(3)/GF(5) use a small dense elimination.
class LinearMatroid final : public RankOracle {
 public:
  /// rows[i][j] = entry (i, j), each in [0, p). All rows must have equal
  /// length n; that length is the ground-set size.
  LinearMatroid(int prime, std::vector<std::vector<int>> rows);
  LinearMatroid(int prime, std::vector<std::vector<int>> rows,
                GroundSet ground);

  int prime() const noexcept { return prime_; }
  int row_count() const noexcept { return row_count_; }
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }

  std::unique_ptr<IncrementalRank> incremental_rank() const override;
  OraclePtr clone_fresh() const override;

 protected:
  int rank_uncached(Subset x) const override;

 private:
  int prime_;
  int row_count_;
  std::vector<std::vector<int>> rows_;
  // Column-major copies for the elimination kernels.
  std::vector<std::uint64_t> cols_gf2_;        // bit i = row i (p == 2)
  std::vector<std::vector<int>> cols_modp_;    // p == 3 or 5

  friend class LinearIncrementalRank;
};

}  // namespace mconn
