#include "mconn/connectivity.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

void check_pair(const RankOracle& m, Subset q, Subset r) {
  if (!(q | r).subset_of(m.full_set())) {
    throw OutOfRange("Q or R references elements outside the ground set");
  }
  if (q.intersects(r)) {
    throw OverlappingSets("Q and R intersect: " + to_string(q & r));
  }
}

/// Assigns each free element to the Q side or the R side, visiting complete
/// partitions in ascending numeric order of the free-set mask. Three
/// incremental rank sessions track r(Q side), r(R side) and r(both); at any
/// partial assignment
///
///   cap = r(Qp) + r(Rp) - r(Qp u Rp)
///
/// lower-bounds lambda of every completion below the node (two applications
/// of submodularity), so subtrees with cap >= bound are pruned. At a leaf the
/// union spans E, making cap equal to lambda itself.
class PartitionScan {
 public:
  PartitionScan(const RankOracle& m, Subset q, Subset r,
                const KappaOptions& options)
      : q_(q),
        deadline_(options.deadline),
        side_q_(m.incremental_rank()),
        side_r_(m.incremental_rank()),
        both_(m.incremental_rank()),
        x_current_(q) {
    // callers issue many short scans; expire between them, not only on the
    // in-walk node counter
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) {
      throw BudgetExhausted("partition scan exceeded its time budget");
    }
    const Subset free = (q | r).complement(m.size());
    for (int e : free) free_elements_.push_back(e);
    for (int e : q) {
      side_q_->push(e);
      both_->push(e);
    }
    for (int e : r) {
      side_r_->push(e);
      both_->push(e);
    }
  }

  int free_count() const { return static_cast<int>(free_elements_.size()); }

  /// Exact minimum over the whole range (serial).
  void scan_min() {
    bound_ = INT_MAX;
    shrink_bound_ = true;
    stop_below_ = false;
    collect_ = nullptr;
    walk(free_count() - 1);
  }

  /// Exact minimum over one high-bit chunk: the top prefix_bits free
  /// positions are fixed to the bits of chunk (most significant first).
  /// Chunked scans consume the object; one scan per chunk.
  void scan_min_chunk(int prefix_bits, std::uint32_t chunk) {
    bound_ = INT_MAX;
    shrink_bound_ = true;
    stop_below_ = false;
    collect_ = nullptr;
    seed_prefix(prefix_bits, chunk);
    walk(free_count() - prefix_bits - 1);
  }

  /// Stops at the first leaf with lambda < threshold.
  void scan_below(int threshold) {
    bound_ = threshold;
    shrink_bound_ = false;
    stop_below_ = true;
    collect_ = nullptr;
    walk(free_count() - 1);
  }

  void scan_below_chunk(int threshold, int prefix_bits, std::uint32_t chunk) {
    bound_ = threshold;
    shrink_bound_ = false;
    stop_below_ = true;
    collect_ = nullptr;
    seed_prefix(prefix_bits, chunk);
    walk(free_count() - prefix_bits - 1);
  }

  /// Collects every leaf with lambda < order_bound into out, ascending.
  void scan_collect(int order_bound, std::vector<Separation>& out) {
    bound_ = order_bound;
    shrink_bound_ = false;
    stop_below_ = false;
    collect_ = &out;
    walk(free_count() - 1);
  }

  bool found() const { return best_ != INT_MAX; }
  int best_value() const { return best_; }
  Subset best_witness() const { return best_witness_; }

 private:
  void seed_prefix(int prefix_bits, std::uint32_t chunk) {
    for (int i = 0; i < prefix_bits; ++i) {
      const int pos = free_count() - 1 - i;
      const bool include = (chunk >> (prefix_bits - 1 - i)) & 1u;
      const int e = free_elements_[static_cast<std::size_t>(pos)];
      if (include) {
        side_q_->push(e);
        x_current_ |= Subset::single(e);
      } else {
        side_r_->push(e);
      }
      both_->push(e);
    }
  }

  /// Returns true to abort the walk (early stop).
  bool walk(int pos) {
    if (deadline_ && (++node_count_ & 0x1fff) == 0 &&
        std::chrono::steady_clock::now() > *deadline_) {
      throw BudgetExhausted("partition scan exceeded its time budget");
    }
    const int cap = side_q_->rank() + side_r_->rank() - both_->rank();
    if (cap >= bound_) return false;
    if (pos < 0) return leaf(cap);
    const int e = free_elements_[static_cast<std::size_t>(pos)];
    // R side first: leaves come out in ascending free-mask order.
    side_r_->push(e);
    both_->push(e);
    bool stop = walk(pos - 1);
    both_->pop();
    side_r_->pop();
    if (stop) return true;
    side_q_->push(e);
    both_->push(e);
    x_current_ |= Subset::single(e);
    stop = walk(pos - 1);
    x_current_ -= Subset::single(e);
    both_->pop();
    side_q_->pop();
    return stop;
  }

  bool leaf(int lambda_value) {
    if (collect_ != nullptr) {
      collect_->push_back({x_current_, lambda_value});
      return false;
    }
    if (lambda_value < best_) {
      best_ = lambda_value;
      best_witness_ = x_current_;
      if (shrink_bound_) bound_ = lambda_value;
    }
    return stop_below_;  // first qualifying leaf ends a threshold probe
  }

  Subset q_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::unique_ptr<IncrementalRank> side_q_;
  std::unique_ptr<IncrementalRank> side_r_;
  std::unique_ptr<IncrementalRank> both_;
  std::vector<int> free_elements_;
  Subset x_current_;
  std::uint64_t node_count_ = 0;

  int bound_ = INT_MAX;
  bool shrink_bound_ = false;
  bool stop_below_ = false;
  std::vector<Separation>* collect_ = nullptr;
  int best_ = INT_MAX;
  Subset best_witness_;
};

int resolve_threads(const KappaOptions& options) {
  return options.threads > 0 ? options.threads : default_thread_count();
}

/// Chunk-prefix width for a parallel scan: enough chunks to balance the
/// workers, never more than the free set allows.
int prefix_bits_for(int threads, int free_count) {
  int bits = 0;
  while ((1 << bits) < 4 * threads && bits < 10) ++bits;
  return std::min(bits, free_count);
}

/// Runs fn(chunk) over all 2^prefix_bits chunks on `threads` workers, claiming
/// chunks through a shared counter. skip_after allows threshold probes to
/// drop chunks that can no longer win. Exceptions are rethrown in the caller.
template <typename Fn>
void run_chunked(int threads, int prefix_bits, Fn&& fn,
                 const std::atomic<std::uint32_t>* skip_after = nullptr) {
  const std::uint32_t chunk_count = std::uint32_t{1} << prefix_bits;
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::uint32_t c = next.fetch_add(1); c < chunk_count;
           c = next.fetch_add(1)) {
        if (skip_after != nullptr && c > skip_after->load()) continue;
        fn(c);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads) - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

int default_thread_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("MCONN_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

int lambda(const RankOracle& m, Subset x) {
  if (!x.subset_of(m.full_set())) {
    throw OutOfRange("lambda: subset outside the ground set");
  }
  return m.rank(x) + m.rank(x.complement(m.size())) - m.full_rank();
}

int sqcap(const RankOracle& m, Subset a, Subset b) {
  if (!(a | b).subset_of(m.full_set())) {
    throw OutOfRange("sqcap: subset outside the ground set");
  }
  if (a.intersects(b)) {
    throw OverlappingSets("sqcap arguments intersect: " + to_string(a & b));
  }
  return m.rank(a) + m.rank(b) - m.rank(a | b);
}

Subset closure(const RankOracle& m, Subset x) {
  if (!x.subset_of(m.full_set())) {
    throw OutOfRange("closure: subset outside the ground set");
  }
  const int rx = m.rank(x);
  Subset out = x;
  for (int e = 0; e < m.size(); ++e) {
    if (!x.contains(e) && m.rank(x.with(e)) == rx) out |= Subset::single(e);
  }
  return out;
}

Subset coclosure(const RankOracle& m, Subset x) {
  if (!x.subset_of(m.full_set())) {
    throw OutOfRange("coclosure: subset outside the ground set");
  }
  // e is in the dual closure of X iff removing e from E - X drops its rank.
  const Subset rest = x.complement(m.size());
  const int r_rest = m.rank(rest);
  Subset out = x;
  for (int e : rest) {
    if (m.rank(rest.without(e)) == r_rest - 1) out |= Subset::single(e);
  }
  return out;
}

KappaResult kappa(const RankOracle& m, Subset q, Subset r,
                  const KappaOptions& options) {
  check_pair(m, q, r);
  const int threads = resolve_threads(options);
  const int free_count = ((q | r).complement(m.size())).count();
  const int prefix_bits = prefix_bits_for(threads, free_count);
  if (threads <= 1 || prefix_bits == 0) {
    PartitionScan scan(m, q, r, options);
    scan.scan_min();
    return {scan.best_value(), scan.best_witness(), true};
  }
  const std::uint32_t chunk_count = std::uint32_t{1} << prefix_bits;
  std::vector<std::optional<std::pair<int, Subset>>> results(chunk_count);
  run_chunked(threads, prefix_bits, [&](std::uint32_t c) {
    PartitionScan scan(m, q, r, options);
    scan.scan_min_chunk(prefix_bits, c);
    if (scan.found()) results[c] = {scan.best_value(), scan.best_witness()};
  });
  int best = INT_MAX;
  Subset witness;
  for (const auto& chunk_best : results) {
    if (!chunk_best) continue;
    const auto& [value, side] = *chunk_best;
    if (value < best || (value == best && side < witness)) {
      best = value;
      witness = side;
    }
  }
  return {best, witness, true};
}

std::optional<Separation> kappa_drop_below(const RankOracle& m, Subset q,
                                           Subset r, int threshold,
                                           const KappaOptions& options) {
  check_pair(m, q, r);
  const int threads = resolve_threads(options);
  const int free_count = ((q | r).complement(m.size())).count();
  const int prefix_bits = prefix_bits_for(threads, free_count);
  if (threads <= 1 || prefix_bits == 0) {
    PartitionScan scan(m, q, r, options);
    scan.scan_below(threshold);
    if (!scan.found()) return std::nullopt;
    return Separation{scan.best_witness(), scan.best_value()};
  }
  const std::uint32_t chunk_count = std::uint32_t{1} << prefix_bits;
  std::vector<std::optional<Separation>> hits(chunk_count);
  std::atomic<std::uint32_t> first_hit{UINT32_MAX};
  run_chunked(
      threads, prefix_bits,
      [&](std::uint32_t c) {
        PartitionScan scan(m, q, r, options);
        scan.scan_below_chunk(threshold, prefix_bits, c);
        if (scan.found()) {
          hits[c] = Separation{scan.best_witness(), scan.best_value()};
          // chunks above c can no longer produce the first witness
          std::uint32_t seen = first_hit.load();
          while (c < seen && !first_hit.compare_exchange_weak(seen, c)) {
          }
        }
      },
      &first_hit);
  for (const auto& hit : hits) {
    if (hit) return hit;
  }
  return std::nullopt;
}

std::vector<Separation> enumerate_separations(const RankOracle& m, Subset q,
                                              Subset r, int order_bound) {
  check_pair(m, q, r);
  if (order_bound < 1) {
    throw Error("enumerate_separations: order bound must be at least 1");
  }
  std::vector<Separation> out;
  PartitionScan scan(m, q, r, {});
  scan.scan_collect(order_bound, out);
  return out;
}

}  // namespace mconn
