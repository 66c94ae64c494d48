#include "mconn/table_matroid.hpp"

#include <bit>
#include <string>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

int log2_exact(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error("rank table length must be a power of two");
  }
  return std::countr_zero(n);
}

}  // namespace

TableMatroid::TableMatroid(std::vector<int> table)
    : TableMatroid(table, GroundSet(log2_exact(table.size()))) {}

TableMatroid::TableMatroid(std::vector<int> table, GroundSet ground)
    : RankOracle(std::move(ground)), table_(std::move(table)) {
  const int n = size();
  if (table_.size() != (std::size_t{1} << n)) {
    throw Error("rank table must have exactly 2^size entries");
  }
  // Axiom validation. Monotonicity and unit increase are checked on single
  // element steps; submodularity through its local form
  //   r(X+e) + r(X+f) >= r(X+e+f) + r(X),
  // which is equivalent for integer-valued unit-increase functions.
  if (table_[0] != 0) throw Error("rank table rejected: r(empty) != 0");
  const std::uint32_t total = std::uint32_t{1} << n;
  for (std::uint32_t x = 0; x < total; ++x) {
    const Subset sx(x);
    const int rx = table_[x];
    if (rx < 0) throw Error("rank table rejected: negative rank");
    for (int e = 0; e < n; ++e) {
      if (sx.contains(e)) continue;
      const int rxe = table_[sx.with(e).bits()];
      if (rxe < rx || rxe > rx + 1) {
        throw Error("rank table rejected: unit-increase fails at " +
                    to_string(sx) + " + " + std::to_string(e));
      }
      for (int f = e + 1; f < n; ++f) {
        if (sx.contains(f)) continue;
        const int rxf = table_[sx.with(f).bits()];
        const int rxef = table_[sx.with(e).with(f).bits()];
        if (rxe + rxf < rxef + rx) {
          throw Error("rank table rejected: submodularity fails at " +
                      to_string(sx) + " with elements " + std::to_string(e) +
                      ", " + std::to_string(f));
        }
      }
    }
  }
}

std::shared_ptr<const TableMatroid> TableMatroid::from_oracle(
    const RankOracle& m) {
  if (m.size() > 20) {
    throw Error("from_oracle: tabulation capped at 20 elements");
  }
  const std::uint32_t total = std::uint32_t{1} << m.size();
  std::vector<int> table(total);
  for (std::uint32_t x = 0; x < total; ++x) table[x] = m.rank(Subset(x));
  return std::make_shared<TableMatroid>(std::move(table), m.ground());
}

int TableMatroid::rank_uncached(Subset x) const {
  return table_[x.bits()];
}

OraclePtr TableMatroid::clone_fresh() const {
  return std::make_shared<TableMatroid>(table_, ground());
}

}  // namespace mconn
