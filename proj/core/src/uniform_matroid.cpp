#include "mconn/uniform_matroid.hpp"

#include <algorithm>
#include <string>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

class UniformIncrementalRank final : public IncrementalRank {
 public:
  explicit UniformIncrementalRank(int cap) : cap_(cap) {}

  void push(int) override { ++count_; }
  void pop() override { --count_; }
  int rank() const override { return std::min(count_, cap_); }

 private:
  int cap_;
  int count_ = 0;
};

}  // namespace

UniformMatroid::UniformMatroid(int rank, int size)
    : UniformMatroid(rank, GroundSet(size)) {}

UniformMatroid::UniformMatroid(int rank, GroundSet ground)
    : RankOracle(std::move(ground)), rank_(rank) {
  if (rank_ < 0 || rank_ > size()) {
    throw Error("uniform matroid rank must lie in [0, size]");
  }
}

int UniformMatroid::rank_uncached(Subset x) const {
  return std::min(x.count(), rank_);
}

std::unique_ptr<IncrementalRank> UniformMatroid::incremental_rank() const {
  return std::make_unique<UniformIncrementalRank>(rank_);
}

OraclePtr UniformMatroid::clone_fresh() const {
  return std::make_shared<UniformMatroid>(rank_, ground());
}

}  // namespace mconn
