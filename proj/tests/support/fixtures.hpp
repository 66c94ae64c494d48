#pragma once

// Shared test fixtures: the small named matroids used across the suites plus
// deterministic random corpora.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mconn/dual_view.hpp"
#include "mconn/graphic_matroid.hpp"
#include "mconn/linear_matroid.hpp"
#include "mconn/table_matroid.hpp"
#include "mconn/uniform_matroid.hpp"

namespace fixtures {

using mconn::GraphicMatroid;
using mconn::GroundSet;
using mconn::OraclePtr;
using mconn::Subset;

/// 4-cycle, labels e1..e4; e1=(0,1), e2=(1,2), e3=(2,3), e4=(3,0).
inline OraclePtr c4() {
  return std::make_shared<GraphicMatroid>(
      4,
      std::vector<GraphicMatroid::Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}},
      GroundSet({"e1", "e2", "e3", "e4"}));
}

/// Path on 4 vertices, labels e1..e3.
inline OraclePtr p4() {
  return std::make_shared<GraphicMatroid>(
      4, std::vector<GraphicMatroid::Edge>{{0, 1}, {1, 2}, {2, 3}},
      GroundSet({"e1", "e2", "e3"}));
}

/// Triangle.
inline OraclePtr k3() {
  return std::make_shared<GraphicMatroid>(
      3, std::vector<GraphicMatroid::Edge>{{0, 1}, {1, 2}, {2, 0}});
}

/// Complete graph on vertices 1..4; labels name the endpoints.
inline OraclePtr k4() {
  return std::make_shared<GraphicMatroid>(
      4,
      std::vector<GraphicMatroid::Edge>{{0, 1}, {0, 2}, {0, 3},
                                        {1, 2}, {1, 3}, {2, 3}},
      GroundSet({"12", "13", "14", "23", "24", "34"}));
}

inline OraclePtr u24() { return std::make_shared<mconn::UniformMatroid>(2, 4); }

/// GF(2) columns (1,0), (0,1), (1,1).
inline OraclePtr gf2_triple() {
  return std::make_shared<mconn::LinearMatroid>(
      2, std::vector<std::vector<int>>{{1, 0, 1}, {0, 1, 1}});
}

/// C4 plus extra loops attached at vertex 0, appended after e4.
inline OraclePtr c4_with_loops(int loops) {
  std::vector<GraphicMatroid::Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  std::vector<std::string> labels{"e1", "e2", "e3", "e4"};
  for (int i = 0; i < loops; ++i) {
    edges.emplace_back(0, 0);
    labels.push_back("g" + std::to_string(i + 1));
  }
  return std::make_shared<GraphicMatroid>(4, std::move(edges),
                                          GroundSet(std::move(labels)));
}

/// C4 plus one element parallel to e1.
inline OraclePtr c4_with_parallel() {
  return std::make_shared<GraphicMatroid>(
      4,
      std::vector<GraphicMatroid::Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 1}},
      GroundSet({"e1", "e2", "e3", "e4", "e1p"}));
}

/// Connected random multigraph on `edges` edges (no loops).
inline OraclePtr random_graphic(std::mt19937_64& rng, int edges) {
  const int lo = std::max(3, edges / 3);
  const int hi = std::max(lo, std::min(edges + 1, 2 * edges / 3 + 2));
  std::uniform_int_distribution<int> vdist(lo, hi);
  const int vertices = vdist(rng);
  std::vector<GraphicMatroid::Edge> list;
  for (int v = 1; v < vertices && static_cast<int>(list.size()) < edges; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    list.emplace_back(parent(rng), v);
  }
  std::uniform_int_distribution<int> any(0, vertices - 1);
  while (static_cast<int>(list.size()) < edges) {
    const int u = any(rng), v = any(rng);
    if (u != v) list.emplace_back(u, v);
  }
  return std::make_shared<GraphicMatroid>(vertices, std::move(list));
}

inline OraclePtr random_linear(std::mt19937_64& rng, int prime, int elements) {
  std::uniform_int_distribution<int> rdist(1, std::max(1, elements / 2 + 1));
  const int rows = rdist(rng);
  std::uniform_int_distribution<int> entry(0, prime - 1);
  std::vector<std::vector<int>> matrix(
      static_cast<std::size_t>(rows),
      std::vector<int>(static_cast<std::size_t>(elements)));
  for (auto& row : matrix) {
    for (auto& cell : row) cell = entry(rng);
  }
  return std::make_shared<mconn::LinearMatroid>(prime, std::move(matrix));
}

inline OraclePtr random_uniform(std::mt19937_64& rng, int elements) {
  std::uniform_int_distribution<int> rdist(0, elements);
  return std::make_shared<mconn::UniformMatroid>(rdist(rng), elements);
}

/// Mixed corpus cycling through every oracle family, including dual views
/// and tabulated copies, |E| in [min_elements, max_elements].
inline std::vector<OraclePtr> mixed_corpus(int count, int min_elements,
                                           int max_elements,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(min_elements, max_elements);
  std::vector<OraclePtr> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int elements = size_dist(rng);
    OraclePtr oracle;
    switch (i % 6) {
      case 0: oracle = random_graphic(rng, elements); break;
      case 1: oracle = random_linear(rng, 2, elements); break;
      case 2: oracle = random_linear(rng, 3, elements); break;
      case 3: oracle = random_linear(rng, 5, elements); break;
      case 4: oracle = random_uniform(rng, elements); break;
      default:
        oracle = mconn::TableMatroid::from_oracle(*random_graphic(rng, elements));
        break;
    }
    if (i % 7 == 3) oracle = mconn::dual(oracle);
    out.push_back(std::move(oracle));
  }
  return out;
}

/// Disjoint random pair of non-empty subsets.
inline std::pair<Subset, Subset> random_pair(std::mt19937_64& rng,
                                             int elements, int max_side) {
  std::uniform_int_distribution<int> size_dist(1, std::max(1, max_side));
  const int want_q = std::min(size_dist(rng), elements / 2);
  const int want_r = std::min(size_dist(rng), elements - want_q - 1);
  std::vector<int> order(static_cast<std::size_t>(elements));
  for (int e = 0; e < elements; ++e) order[static_cast<std::size_t>(e)] = e;
  std::shuffle(order.begin(), order.end(), rng);
  Subset q, r;
  int at = 0;
  for (int i = 0; i < std::max(1, want_q); ++i) {
    q |= Subset::single(order[static_cast<std::size_t>(at++)]);
  }
  for (int i = 0; i < std::max(1, want_r); ++i) {
    r |= Subset::single(order[static_cast<std::size_t>(at++)]);
  }
  return {q, r};
}

}  // namespace fixtures
