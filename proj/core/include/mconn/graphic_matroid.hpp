#pragma once

#include <utility>
#include <vector>

#include "mconn/rank_oracle.hpp"

namespace mconn {

/// Cycle matroid of a multigraph: element j is the edge edges[j], loops and
/// parallel edges allowed. rank(X) = (vertices touched by X) - (connected
/// components of the subgraph spanned by X), computed with a union-find per
/// call; the incremental session keeps a rollback union-find instead.
class GraphicMatroid final : public RankOracle {
 public:
  using Edge = std::pair<int, int>;

  GraphicMatroid(int vertex_count, std::vector<Edge> edges);
  GraphicMatroid(int vertex_count, std::vector<Edge> edges, GroundSet ground);

  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::unique_ptr<IncrementalRank> incremental_rank() const override;
  OraclePtr clone_fresh() const override;

 protected:
  int rank_uncached(Subset x) const override;

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
};

}  // namespace mconn
