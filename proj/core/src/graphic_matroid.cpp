#include "mconn/graphic_matroid.hpp"

#include <numeric>
#include <string>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

/// Union by size without path compression, so every union is undoable in
/// O(1). find is O(log n); n stays tiny here.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  /// Returns true when the roots were distinct (rank went up by one);
  /// only successful unions are recorded for undo.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    trail_.push_back(b);
    return true;
  }

  void undo() {
    const int child = trail_.back();
    trail_.pop_back();
    const int root = parent_[child];
    size_[root] -= size_[child];
    parent_[child] = child;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> trail_;
};

class GraphicIncrementalRank final : public IncrementalRank {
 public:
  GraphicIncrementalRank(const std::vector<GraphicMatroid::Edge>& edges,
                         int vertex_count)
      : edges_(edges), uf_(vertex_count) {}

  void push(int element) override {
    const auto [u, v] = edges_[static_cast<std::size_t>(element)];
    const bool merged = (u != v) && uf_.unite(u, v);
    merged_.push_back(merged);
    if (merged) ++rank_;
  }

  void pop() override {
    if (merged_.back()) {
      uf_.undo();
      --rank_;
    }
    merged_.pop_back();
  }

  int rank() const override { return rank_; }

 private:
  const std::vector<GraphicMatroid::Edge>& edges_;
  RollbackUnionFind uf_;
  std::vector<bool> merged_;
  int rank_ = 0;
};

}  // namespace

GraphicMatroid::GraphicMatroid(int vertex_count, std::vector<Edge> edges)
    : GraphicMatroid(vertex_count, edges,
                     GroundSet(static_cast<int>(edges.size()))) {}

GraphicMatroid::GraphicMatroid(int vertex_count, std::vector<Edge> edges,
                               GroundSet ground)
    : RankOracle(std::move(ground)),
      vertex_count_(vertex_count),
      edges_(std::move(edges)) {
  if (static_cast<int>(edges_.size()) != size()) {
    throw Error("edge list length must match ground-set size");
  }
  for (const auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) {
      throw Error("edge endpoint outside vertex range [0, " +
                  std::to_string(vertex_count_) + ")");
    }
  }
}

int GraphicMatroid::rank_uncached(Subset x) const {
  thread_local std::vector<int> parent;
  parent.resize(static_cast<std::size_t>(vertex_count_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      // path halving
      auto& p = parent[static_cast<std::size_t>(v)];
      p = parent[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  };
  int rank = 0;
  for (int e : x) {
    const auto [u, v] = edges_[static_cast<std::size_t>(e)];
    const int ru = find(u), rv = find(v);
    if (ru != rv) {
      parent[static_cast<std::size_t>(ru)] = rv;
      ++rank;
    }
  }
  return rank;
}

std::unique_ptr<IncrementalRank> GraphicMatroid::incremental_rank() const {
  return std::make_unique<GraphicIncrementalRank>(edges_, vertex_count_);
}

OraclePtr GraphicMatroid::clone_fresh() const {
  return std::make_shared<GraphicMatroid>(vertex_count_, edges_, ground());
}

}  // namespace mconn
