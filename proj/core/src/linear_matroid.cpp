#include "mconn/linear_matroid.hpp"

#include <bit>
#include <string>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

/// Reduces col against the basis (entries indexed by pivot row, 0 = free).
/// Returns the reduced column; nonzero means independent with pivot at the
/// lowest set bit.
std::uint64_t reduce_gf2(std::uint64_t col, const std::uint64_t* basis) {
  while (col != 0) {
    const int pivot = std::countr_zero(col);
    if (basis[pivot] == 0) break;
    col ^= basis[pivot];
  }
  return col;
}

int mod_inverse(int a, int p) {
  // p is 3 or 5; a in [1, p)
  for (int x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  return 0;
}

/// Reduces col in place against basis vectors normalized to pivot value 1.
/// Returns the pivot row, or -1 when col reduces to zero.
int reduce_modp(std::vector<int>& col, const std::vector<std::vector<int>>& basis,
                const std::vector<int>& basis_pivot, int p) {
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const int piv = basis_pivot[b];
    const int factor = col[static_cast<std::size_t>(piv)];
    if (factor == 0) continue;
    for (std::size_t i = 0; i < col.size(); ++i) {
      col[i] = (col[i] + (p - factor) * basis[b][i]) % p;
    }
  }
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (col[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

class LinearIncrementalRank final : public IncrementalRank {
 public:
  explicit LinearIncrementalRank(const LinearMatroid& m) : m_(m) {
    if (m_.prime() == 2) {
      basis_gf2_.assign(static_cast<std::size_t>(m_.row_count()), 0);
    }
  }

  void push(int element) override {
    bool added = false;
    if (m_.prime() == 2) {
      const std::uint64_t reduced =
          reduce_gf2(m_.cols_gf2_[static_cast<std::size_t>(element)],
                     basis_gf2_.data());
      if (reduced != 0) {
        basis_gf2_[static_cast<std::size_t>(std::countr_zero(reduced))] =
            reduced;
        pivots_.push_back(std::countr_zero(reduced));
        added = true;
      }
    } else {
      std::vector<int> col = m_.cols_modp_[static_cast<std::size_t>(element)];
      const int pivot = reduce_modp(col, basis_modp_, pivots_, m_.prime());
      if (pivot >= 0) {
        // normalize so the pivot entry is 1
        const int inv = mod_inverse(col[static_cast<std::size_t>(pivot)],
                                    m_.prime());
        for (auto& entry : col) entry = entry * inv % m_.prime();
        basis_modp_.push_back(std::move(col));
        pivots_.push_back(pivot);
        added = true;
      }
    }
    added_.push_back(added);
    if (added) ++rank_;
  }

  void pop() override {
    if (added_.back()) {
      if (m_.prime() == 2) {
        basis_gf2_[static_cast<std::size_t>(pivots_.back())] = 0;
      } else {
        basis_modp_.pop_back();
      }
      pivots_.pop_back();
      --rank_;
    }
    added_.pop_back();
  }

  int rank() const override { return rank_; }

 private:
  const LinearMatroid& m_;
  std::vector<std::uint64_t> basis_gf2_;
  std::vector<std::vector<int>> basis_modp_;
  std::vector<int> pivots_;
  std::vector<bool> added_;
  int rank_ = 0;
};

LinearMatroid::LinearMatroid(int prime, std::vector<std::vector<int>> rows)
    : LinearMatroid(prime, rows,
                    GroundSet(rows.empty() ? 0
                                           : static_cast<int>(rows[0].size()))) {}

LinearMatroid::LinearMatroid(int prime, std::vector<std::vector<int>> rows,
                             GroundSet ground)
    : RankOracle(std::move(ground)),
      prime_(prime),
      row_count_(static_cast<int>(rows.size())),
      rows_(std::move(rows)) {
  if (prime_ != 2 && prime_ != 3 && prime_ != 5) {
    throw Error("linear matroids support GF(2), GF(3), GF(5) only");
  }
  if (row_count_ > 64) throw Error("linear matroid supports at most 64 rows");
  const auto n = static_cast<std::size_t>(size());
  for (const auto& row : rows_) {
    if (row.size() != n) throw Error("matrix rows must have equal length");
    for (int entry : row) {
      if (entry < 0 || entry >= prime_) {
        throw Error("matrix entry " + std::to_string(entry) +
                    " outside GF(" + std::to_string(prime_) + ")");
      }
    }
  }
  if (prime_ == 2) {
    cols_gf2_.assign(n, 0);
    for (int i = 0; i < row_count_; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rows_[static_cast<std::size_t>(i)][j] != 0) {
          cols_gf2_[j] |= std::uint64_t{1} << i;
        }
      }
    }
  } else {
    cols_modp_.assign(n, std::vector<int>(static_cast<std::size_t>(row_count_)));
    for (int i = 0; i < row_count_; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cols_modp_[j][static_cast<std::size_t>(i)] =
            rows_[static_cast<std::size_t>(i)][j];
      }
    }
  }
}

int LinearMatroid::rank_uncached(Subset x) const {
  LinearIncrementalRank session(*this);
  for (int e : x) session.push(e);
  return session.rank();
}

std::unique_ptr<IncrementalRank> LinearMatroid::incremental_rank() const {
  return std::make_unique<LinearIncrementalRank>(*this);
}

OraclePtr LinearMatroid::clone_fresh() const {
  return std::make_shared<LinearMatroid>(prime_, rows_, ground());
}

}  // namespace mconn
