#include "mconn/rank_oracle.hpp"

#include <atomic>
#include <string>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

/// Fallback incremental session: tracks the current mask and answers through
/// the (memoized) oracle rank.
class GenericIncrementalRank final : public IncrementalRank {
 public:
  explicit GenericIncrementalRank(const RankOracle& oracle) : oracle_(oracle) {
    trail_.reserve(static_cast<std::size_t>(oracle.size()) + 1);
    trail_.push_back(Subset());
  }

  void push(int element) override {
    trail_.push_back(trail_.back().with(element));
  }

  void pop() override { trail_.pop_back(); }

  int rank() const override { return oracle_.rank(trail_.back()); }

 private:
  const RankOracle& oracle_;
  std::vector<Subset> trail_;
};

}  // namespace

RankOracle::RankOracle(GroundSet ground) : ground_(std::move(ground)) {}

int RankOracle::rank(Subset x) const {
  if (!x.subset_of(full_set())) {
    throw OutOfRange("subset " + to_string(x) +
                     " not within ground set of size " +
                     std::to_string(size()));
  }
  if (size() > kMemoMaxBits) return rank_uncached(x);

  std::call_once(memo_init_, [this] {
    memo_.assign(std::size_t{1} << size(), std::int8_t{-1});
  });
  std::atomic_ref<std::int8_t> cell(memo_[x.bits()]);
  std::int8_t value = cell.load(std::memory_order_relaxed);
  if (value < 0) {
    value = static_cast<std::int8_t>(rank_uncached(x));
    cell.store(value, std::memory_order_relaxed);
  }
  return value;
}

int RankOracle::full_rank() const {
  int cached = full_rank_.load(std::memory_order_relaxed);
  if (cached < 0) {
    cached = rank(full_set());
    full_rank_.store(cached, std::memory_order_relaxed);
  }
  return cached;
}

std::unique_ptr<IncrementalRank> RankOracle::incremental_rank() const {
  return std::make_unique<GenericIncrementalRank>(*this);
}

void validate_rank_axioms(const RankOracle& m) {
  const int n = m.size();
  if (n > 14) {
    throw Error("validate_rank_axioms: oracle too large for the pairwise "
                "submodularity scan");
  }
  const std::uint32_t total = std::uint32_t{1} << n;
  if (m.rank(Subset()) != 0) throw Error("rank axiom violated: r(empty) != 0");
  for (std::uint32_t x = 0; x < total; ++x) {
    const Subset sx(x);
    const int rx = m.rank(sx);
    if (rx < 0) throw Error("rank axiom violated: negative rank");
    for (int e = 0; e < n; ++e) {
      if (sx.contains(e)) continue;
      const int rxe = m.rank(sx.with(e));
      if (rxe < rx || rxe > rx + 1) {
        throw Error("rank axiom violated: adding one element must keep rank "
                    "or raise it by one (at " + to_string(sx) + " + " +
                    std::to_string(e) + ")");
      }
    }
  }
  // Full pairwise submodularity.
  for (std::uint32_t x = 0; x < total; ++x) {
    for (std::uint32_t y = x; y < total; ++y) {
      const Subset sx(x), sy(y);
      if (m.rank(sx | sy) + m.rank(sx & sy) > m.rank(sx) + m.rank(sy)) {
        throw Error("rank axiom violated: submodularity fails at " +
                    to_string(sx) + ", " + to_string(sy));
      }
    }
  }
}

}  // namespace mconn
