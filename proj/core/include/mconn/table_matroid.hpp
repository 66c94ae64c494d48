#pragma once

#include <cstdint>
#include <vector>

#include "mconn/rank_oracle.hpp"

namespace mconn {

/// Explicit rank table over all 2^n subsets, validated against the rank
/// axioms at construction. Serves as the brute-force cross-check oracle for
/// every other matroid class.
class TableMatroid final : public RankOracle {
 public:
  /// table[mask] = rank of the subset with that bit pattern; table.size()
  /// must be 2^ground.size(). Throws Error when any axiom fails.
  TableMatroid(std::vector<int> table, GroundSet ground);
  explicit TableMatroid(std::vector<int> table);

  /// Tabulates another oracle (size <= 20). The axiom validation in the
  /// constructor then applies to the tabulated ranks.
  static std::shared_ptr<const TableMatroid> from_oracle(const RankOracle& m);

  const std::vector<int>& table() const noexcept { return table_; }

  OraclePtr clone_fresh() const override;

 protected:
  int rank_uncached(Subset x) const override;

 private:
  std::vector<int> table_;
};

}  // namespace mconn
