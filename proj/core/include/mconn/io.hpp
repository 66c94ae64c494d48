#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mconn/intertwine.hpp"
#include "mconn/rank_oracle.hpp"

namespace mconn {

/// Parsed form of the line-oriented matroid file format. `#` starts a
/// comment anywhere on a line. The first directive is
///   type linear|graphic|uniform|table
/// followed by the type-specific body:
///   linear:  field p / rows r / matrix + r digit-rows
///   graphic: vertices n / edges + one "u v" line per edge
///   uniform: rank r / size n
///   table:   size n + 2^n "mask rank" lines
/// and an optional "labels a b c ..." line naming elements in index order.
struct MatroidData {
  enum class Type { Linear, Graphic, Uniform, Table };

  Type type = Type::Uniform;
  int prime = 0;                          // linear
  std::vector<std::string> matrix_rows;   // linear: digit strings
  int vertex_count = 0;                   // graphic
  std::vector<std::pair<int, int>> edges; // graphic
  int uniform_rank = 0;                   // uniform
  int size = 0;                           // uniform, table
  std::vector<int> table;                 // table: rank by mask
  std::vector<std::string> labels;        // empty = default labels

  bool operator==(const MatroidData&) const = default;
};

/// Throws ParseError (with 1-based line number) on malformed input.
MatroidData parse_matroid(std::istream& in);
MatroidData parse_matroid_text(const std::string& text);

/// Canonical text form; parse(serialize(d)) == d.
std::string serialize_matroid(const MatroidData& data);

/// Constructs the oracle, validating ranks (full axiom check for tables).
OraclePtr build_oracle(const MatroidData& data);

/// Concrete description of an oracle: the defining data for the four
/// concrete classes, a rank table for views of at most 16 elements.
MatroidData describe_oracle(const RankOracle& m);

/// Parsed instance file: a matroid (inline body, or "matroid <path>"
/// reference) plus the four element-label lists. Absent directives are empty
/// sets. Line numbers of the directives are kept for error reporting.
struct InstanceData {
  std::optional<std::string> matroid_ref;
  std::optional<MatroidData> matroid;
  std::vector<std::string> q, r, s, t;
  int q_line = 0, r_line = 0, s_line = 0, t_line = 0;
};

InstanceData parse_instance(std::istream& in);
InstanceData parse_instance_text(const std::string& text);

std::string serialize_instance_data(const InstanceData& data);

/// Inline text form of a live instance (used to persist scan artifacts).
std::string serialize_instance(const IntertwineInstance& instance);

/// Resolves labels and the matroid reference (relative to base_dir) and
/// builds the instance. Q n R and S n T disjointness violations surface as
/// ParseError carrying the directive's line number.
IntertwineInstance build_instance(const InstanceData& data,
                                  const std::string& base_dir = ".",
                                  const KappaOptions& options = {});

/// Fixed-schema JSON for an intertwined-element report.
std::string intertwine_report_json(const IntertwineInstance& instance,
                                   const IntertwineReport& report);

}  // namespace mconn
