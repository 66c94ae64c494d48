#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mconn/graphic_matroid.hpp"
#include "mconn/intertwine.hpp"

namespace mconn {

/// The (k+1) x (l+1) vertex grid graph with its four boundary edge sets:
/// Q/R the leftmost/rightmost column of vertical edges, S/T the top/bottom
/// row of horizontal edges. Element order is all horizontal edges row-major
/// ("h{i}_{j}"), then all vertical edges row-major ("v{i}_{j}").
///
/// By construction |E| = 2kl + k + l, |Q| = |R| = k, |S| = |T| = l, and the
/// free set has exactly 2kl - k - l elements. The connectivities are computed
/// at construction and must equal (k, l); a KappaMismatch otherwise.
struct GridInstance {
  int k;
  int l;
  IntertwineInstance instance;
};

/// Throws KappaMismatch when the computed connectivities differ from (k, l),
/// and CapExceeded when the grid needs more than 32 edges.
GridInstance build_grid_instance(int k, int l, const KappaOptions& options = {});

/// Both-minor connectivity table for one free element of a grid.
struct ExtremalRow {
  int element;
  int kappa_qr_delete;
  int kappa_st_delete;
  int kappa_qr_contract;
  int kappa_st_contract;

  bool delete_qualifies(int k, int l) const {
    return kappa_qr_delete == k && kappa_st_delete == l;
  }
  bool contract_qualifies(int k, int l) const {
    return kappa_qr_contract == k && kappa_st_contract == l;
  }
};

/// Exhaustively evaluates every (free element, operation) pair of the grid.
/// Grids are expected to admit no qualifying element; the report states
/// whatever the exact scan finds.
struct ExtremalReport {
  GridInstance grid;
  std::vector<ExtremalRow> rows;
  bool any_qualifying;
};
ExtremalReport run_extremal_check(int k, int l, const KappaOptions& options = {});

enum class InstanceFamily { Graphic, LinearGf2, UniformMix };

const char* to_string(InstanceFamily family);

struct SizeRange {
  int lo;
  int hi;

  bool operator==(const SizeRange&) const = default;
};

/// Deterministic generator configuration: identical (config, index) pairs
/// produce identical instances, independent of thread count.
struct ScanConfig {
  std::uint64_t seed = 0;
  InstanceFamily family = InstanceFamily::Graphic;
  SizeRange elements{8, 12};
  SizeRange q_size{1, 1};
  SizeRange r_size{1, 1};
  SizeRange s_size{1, 1};
  SizeRange t_size{1, 1};
  int samples = 0;
  std::int64_t budget_ms = 0;  // 0 = unlimited
};

/// Instance index `index` of the stream defined by config. Generated
/// matroids with at most 9 elements are cross-checked against a tabulated
/// copy, which re-validates the rank axioms.
IntertwineInstance random_instance(const ScanConfig& config, int index);

struct ScanRecord {
  std::string family;
  std::uint64_t seed = 0;
  int index = 0;
  int element_count = 0;
  int q_size = 0, r_size = 0, s_size = 0, t_size = 0;
  int k = 0, l = 0;
  int f_size = 0;
  bool found = false;
  std::string element;  // label; empty when not found
  std::string op;       // "delete", "contract" or empty
  std::int64_t wall_ms = 0;
  bool budget_exhausted = false;
  bool flagged = false;            // not found above the conjectured bound
  bool theorem_violation = false;  // not found above the proved bound
};

/// Outcome counts for one (k, l) cell of the summary.
struct ScanBin {
  int k = 0, l = 0;
  int records = 0;
  int found = 0;
  int not_found = 0;
  int budget_exhausted = 0;
  int flagged = 0;
  std::int64_t c_bound_value = 0;
  std::int64_t conjecture_bound_value = 0;
};

struct ScanResult {
  std::vector<ScanRecord> records;         // in instance-index order
  std::vector<ScanBin> bins;               // ascending (k, l)
  /// Serialized instance files for every flagged record, by index. Flagged
  /// instances were already re-verified exhaustively on fresh oracles; the
  /// files allow an independent re-run in a separate process.
  std::vector<std::pair<int, std::string>> artifacts;
};

/// Runs find_intertwined_element over the whole instance stream. Budget
/// exhaustion is recorded per record, never raised; theorem violations are
/// recorded, flagged and persisted, never raised.
ScanResult conjecture_scan(const ScanConfig& config, int threads = 0);

/// One CSV row per record, fixed column order, header included. wall_ms is
/// the only field that may differ between reruns.
std::string scan_records_csv(const std::vector<ScanRecord>& records);

/// Fixed-schema JSON summary: sample count plus one object per (k, l) bin.
std::string scan_summary_json(const ScanResult& result, int samples);

}  // namespace mconn
