#include "mconn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mconn/errors.hpp"
#include "mconn/graphic_matroid.hpp"
#include "mconn/linear_matroid.hpp"
#include "mconn/table_matroid.hpp"
#include "mconn/uniform_matroid.hpp"

namespace mconn {

namespace {

struct Line {
  int number;                       // 1-based
  std::vector<std::string> tokens;  // comment-stripped, whitespace-split
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream split(raw);
    Line line{number, {}};
    std::string token;
    while (split >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

int parse_int(const std::string& token, int line) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
  return value;
}

/// Parses a matroid body out of lines[pos...]; advances pos past it.
MatroidData parse_matroid_lines(const std::vector<Line>& lines,
                                std::size_t& pos) {
  if (pos >= lines.size()) throw ParseError(0, "empty matroid description");
  const Line& head = lines[pos];
  if (head.tokens.size() != 2 || head.tokens[0] != "type") {
    throw ParseError(head.number, "expected 'type <kind>' directive");
  }
  // errors about missing content point at the line where input ran out
  const auto line_at = [&lines](std::size_t at) {
    return at < lines.size() ? lines[at].number : lines.back().number;
  };

  MatroidData data;
  const std::string& kind = head.tokens[1];
  ++pos;

  const auto expect_directive = [&](const std::string& name) {
    if (pos >= lines.size() || lines[pos].tokens.size() != 2 ||
        lines[pos].tokens[0] != name) {
      throw ParseError(line_at(pos),
                       "expected '" + name + " <value>' directive");
    }
    const int value = parse_int(lines[pos].tokens[1], lines[pos].number);
    ++pos;
    return value;
  };

  if (kind == "linear") {
    data.type = MatroidData::Type::Linear;
    data.prime = expect_directive("field");
    const int rows = expect_directive("rows");
    if (pos >= lines.size() || lines[pos].tokens != std::vector<std::string>{"matrix"}) {
      throw ParseError(line_at(pos),
                       "expected 'matrix' directive");
    }
    ++pos;
    for (int i = 0; i < rows; ++i) {
      if (pos >= lines.size() || lines[pos].tokens.size() != 1) {
        throw ParseError(line_at(pos),
                         "expected a matrix digit-row");
      }
      data.matrix_rows.push_back(lines[pos].tokens[0]);
      ++pos;
    }
  } else if (kind == "graphic") {
    data.type = MatroidData::Type::Graphic;
    data.vertex_count = expect_directive("vertices");
    if (pos >= lines.size() || lines[pos].tokens != std::vector<std::string>{"edges"}) {
      throw ParseError(line_at(pos),
                       "expected 'edges' directive");
    }
    ++pos;
    // edge lines run until the next directive
    while (pos < lines.size() && lines[pos].tokens.size() == 2) {
      int u, v;
      const auto& tokens = lines[pos].tokens;
      try {
        u = parse_int(tokens[0], lines[pos].number);
        v = parse_int(tokens[1], lines[pos].number);
      } catch (const ParseError&) {
        break;  // not an edge line; treat as the next directive
      }
      data.edges.emplace_back(u, v);
      ++pos;
    }
  } else if (kind == "uniform") {
    data.type = MatroidData::Type::Uniform;
    data.uniform_rank = expect_directive("rank");
    data.size = expect_directive("size");
  } else if (kind == "table") {
    data.type = MatroidData::Type::Table;
    data.size = expect_directive("size");
    if (data.size < 0 || data.size > GroundSet::kMaxElements) {
      throw ParseError(head.number, "table size outside [0, 32]");
    }
    const std::size_t entries = std::size_t{1} << data.size;
    data.table.assign(entries, -1);
    for (std::size_t i = 0; i < entries; ++i) {
      if (pos >= lines.size() || lines[pos].tokens.size() != 2) {
        throw ParseError(line_at(pos),
                         "expected a 'mask rank' line");
      }
      const int mask = parse_int(lines[pos].tokens[0], lines[pos].number);
      const int rank = parse_int(lines[pos].tokens[1], lines[pos].number);
      if (mask < 0 || static_cast<std::size_t>(mask) >= entries) {
        throw ParseError(lines[pos].number, "mask outside the subset range");
      }
      if (data.table[static_cast<std::size_t>(mask)] != -1) {
        throw ParseError(lines[pos].number, "duplicate mask in rank table");
      }
      data.table[static_cast<std::size_t>(mask)] = rank;
      ++pos;
    }
  } else {
    throw ParseError(head.number, "unknown matroid type '" + kind + "'");
  }

  if (pos < lines.size() && !lines[pos].tokens.empty() &&
      lines[pos].tokens[0] == "labels") {
    data.labels.assign(lines[pos].tokens.begin() + 1, lines[pos].tokens.end());
    ++pos;
  }
  return data;
}

int element_count_of(const MatroidData& data) {
  switch (data.type) {
    case MatroidData::Type::Linear:
      return data.matrix_rows.empty()
                 ? 0
                 : static_cast<int>(data.matrix_rows[0].size());
    case MatroidData::Type::Graphic:
      return static_cast<int>(data.edges.size());
    case MatroidData::Type::Uniform:
    case MatroidData::Type::Table:
      return data.size;
  }
  return 0;
}

GroundSet ground_of(const MatroidData& data) {
  if (data.labels.empty()) return GroundSet(element_count_of(data));
  return GroundSet(data.labels);
}


Subset resolve_labels(const GroundSet& ground,
                      const std::vector<std::string>& labels, int line) {
  Subset out;
  for (const auto& label : labels) {
    const auto index = ground.index_of(label);
    if (!index) {
      throw ParseError(line, "unknown element label '" + label + "'");
    }
    out |= Subset::single(*index);
  }
  return out;
}

std::string join_labels(const GroundSet& ground, Subset s) {
  std::string out;
  for (int e : s) {
    if (!out.empty()) out += ' ';
    out += ground.label(e);
  }
  return out;
}

}  // namespace

MatroidData parse_matroid(std::istream& in) {
  const auto lines = tokenize(in);
  std::size_t pos = 0;
  MatroidData data = parse_matroid_lines(lines, pos);
  if (pos != lines.size()) {
    throw ParseError(lines[pos].number, "unexpected trailing content");
  }
  return data;
}

MatroidData parse_matroid_text(const std::string& text) {
  std::istringstream in(text);
  return parse_matroid(in);
}

std::string serialize_matroid(const MatroidData& data) {
  std::ostringstream out;
  switch (data.type) {
    case MatroidData::Type::Linear:
      out << "type linear\n";
      out << "field " << data.prime << "\n";
      out << "rows " << data.matrix_rows.size() << "\n";
      out << "matrix\n";
      for (const auto& row : data.matrix_rows) out << row << "\n";
      break;
    case MatroidData::Type::Graphic:
      out << "type graphic\n";
      out << "vertices " << data.vertex_count << "\n";
      out << "edges\n";
      for (const auto& [u, v] : data.edges) out << u << " " << v << "\n";
      break;
    case MatroidData::Type::Uniform:
      out << "type uniform\n";
      out << "rank " << data.uniform_rank << "\n";
      out << "size " << data.size << "\n";
      break;
    case MatroidData::Type::Table:
      out << "type table\n";
      out << "size " << data.size << "\n";
      for (std::size_t mask = 0; mask < data.table.size(); ++mask) {
        out << mask << " " << data.table[mask] << "\n";
      }
      break;
  }
  if (!data.labels.empty()) {
    out << "labels";
    for (const auto& label : data.labels) out << " " << label;
    out << "\n";
  }
  return out.str();
}

OraclePtr build_oracle(const MatroidData& data) {
  try {
    GroundSet ground = ground_of(data);
    switch (data.type) {
      case MatroidData::Type::Linear: {
        std::vector<std::vector<int>> rows;
        for (const auto& digits : data.matrix_rows) {
          std::vector<int> row;
          for (const char c : digits) {
            if (c < '0' || c > '9') {
              throw Error("matrix rows must be digit strings");
            }
            row.push_back(c - '0');
          }
          rows.push_back(std::move(row));
        }
        return std::make_shared<LinearMatroid>(data.prime, std::move(rows),
                                               std::move(ground));
      }
      case MatroidData::Type::Graphic:
        return std::make_shared<GraphicMatroid>(data.vertex_count, data.edges,
                                                std::move(ground));
      case MatroidData::Type::Uniform:
        return std::make_shared<UniformMatroid>(data.uniform_rank,
                                                std::move(ground));
      case MatroidData::Type::Table:
        return std::make_shared<TableMatroid>(data.table, std::move(ground));
    }
    throw Error("unknown matroid type");
  } catch (const CapExceeded&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

MatroidData describe_oracle(const RankOracle& m) {
  MatroidData data;
  const auto store_labels = [&](const GroundSet& ground) {
    data.labels = ground.labels();
    bool all_default = true;
    for (int i = 0; i < ground.size(); ++i) {
      if (ground.label(i) != std::to_string(i)) all_default = false;
    }
    if (all_default) data.labels.clear();
  };
  if (const auto* linear = dynamic_cast<const LinearMatroid*>(&m)) {
    data.type = MatroidData::Type::Linear;
    data.prime = linear->prime();
    for (const auto& row : linear->rows()) {
      std::string digits;
      for (int entry : row) digits += static_cast<char>('0' + entry);
      data.matrix_rows.push_back(std::move(digits));
    }
  } else if (const auto* graphic = dynamic_cast<const GraphicMatroid*>(&m)) {
    data.type = MatroidData::Type::Graphic;
    data.vertex_count = graphic->vertex_count();
    data.edges = graphic->edges();
  } else if (const auto* uniform = dynamic_cast<const UniformMatroid*>(&m)) {
    data.type = MatroidData::Type::Uniform;
    data.uniform_rank = uniform->uniform_rank();
    data.size = uniform->size();
  } else if (const auto* table = dynamic_cast<const TableMatroid*>(&m)) {
    data.type = MatroidData::Type::Table;
    data.size = table->size();
    data.table = table->table();
  } else {
    // Views and other oracles export as an explicit rank table.
    if (m.size() > 16) {
      throw Error("cannot describe a derived oracle with more than 16 "
                  "elements; persist the concrete matroid instead");
    }
    data.type = MatroidData::Type::Table;
    data.size = m.size();
    const std::uint32_t total = std::uint32_t{1} << m.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      data.table.push_back(m.rank(Subset(mask)));
    }
  }
  store_labels(m.ground());
  return data;
}

InstanceData parse_instance(std::istream& in) {
  const auto lines = tokenize(in);
  InstanceData data;
  std::size_t pos = 0;
  while (pos < lines.size()) {
    const Line& line = lines[pos];
    const std::string& head = line.tokens[0];
    if (head == "matroid") {
      if (line.tokens.size() != 2) {
        throw ParseError(line.number, "expected 'matroid <path>'");
      }
      data.matroid_ref = line.tokens[1];
      ++pos;
    } else if (head == "type") {
      data.matroid = parse_matroid_lines(lines, pos);
    } else if (head == "Q" || head == "R" || head == "S" || head == "T") {
      std::vector<std::string> labels(line.tokens.begin() + 1,
                                      line.tokens.end());
      if (head == "Q") {
        data.q = std::move(labels);
        data.q_line = line.number;
      } else if (head == "R") {
        data.r = std::move(labels);
        data.r_line = line.number;
      } else if (head == "S") {
        data.s = std::move(labels);
        data.s_line = line.number;
      } else {
        data.t = std::move(labels);
        data.t_line = line.number;
      }
      ++pos;
    } else {
      throw ParseError(line.number, "unknown directive '" + head + "'");
    }
  }
  if (!data.matroid_ref && !data.matroid) {
    throw ParseError(0, "instance has no matroid (inline body or reference)");
  }
  if (data.matroid_ref && data.matroid) {
    throw ParseError(0, "instance has both an inline matroid and a reference");
  }
  return data;
}

InstanceData parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string serialize_instance_data(const InstanceData& data) {
  std::ostringstream out;
  if (data.matroid_ref) {
    out << "matroid " << *data.matroid_ref << "\n";
  } else if (data.matroid) {
    out << serialize_matroid(*data.matroid);
  }
  const auto emit = [&out](const char* name,
                           const std::vector<std::string>& labels) {
    out << name;
    for (const auto& label : labels) out << " " << label;
    out << "\n";
  };
  emit("Q", data.q);
  emit("R", data.r);
  emit("S", data.s);
  emit("T", data.t);
  return out.str();
}

std::string serialize_instance(const IntertwineInstance& instance) {
  const auto& m = *instance.oracle();
  std::ostringstream out;
  out << serialize_matroid(describe_oracle(m));
  out << "Q " << join_labels(m.ground(), instance.q()) << "\n";
  out << "R " << join_labels(m.ground(), instance.r()) << "\n";
  out << "S " << join_labels(m.ground(), instance.s()) << "\n";
  out << "T " << join_labels(m.ground(), instance.t()) << "\n";
  return out.str();
}

IntertwineInstance build_instance(const InstanceData& data,
                                  const std::string& base_dir,
                                  const KappaOptions& options) {
  OraclePtr oracle;
  if (data.matroid) {
    oracle = build_oracle(*data.matroid);
  } else {
    std::string path = *data.matroid_ref;
    if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open matroid file '" + path + "'");
    oracle = build_oracle(parse_matroid(in));
  }
  const GroundSet& ground = oracle->ground();
  const Subset q = resolve_labels(ground, data.q, data.q_line);
  const Subset r = resolve_labels(ground, data.r, data.r_line);
  const Subset s = resolve_labels(ground, data.s, data.s_line);
  const Subset t = resolve_labels(ground, data.t, data.t_line);
  if (q.intersects(r)) {
    throw ParseError(data.r_line ? data.r_line : data.q_line,
                     "Q and R must be disjoint");
  }
  if (s.intersects(t)) {
    throw ParseError(data.t_line ? data.t_line : data.s_line,
                     "S and T must be disjoint");
  }
  return IntertwineInstance(std::move(oracle), q, r, s, t, options);
}

std::string intertwine_report_json(const IntertwineInstance& instance,
                                   const IntertwineReport& report) {
  const auto& ground = instance.oracle()->ground();
  nlohmann::ordered_json json;
  if (report.element) {
    json["element"] = ground.label(*report.element);
    json["operation"] = to_string(*report.operation);
  } else {
    json["element"] = nullptr;
    json["operation"] = "none";
  }
  json["kappaQR_before"] = report.kappa_qr_before;
  json["kappaST_before"] = report.kappa_st_before;
  if (report.kappa_qr_after) {
    json["kappaQR_after"] = *report.kappa_qr_after;
    json["kappaST_after"] = *report.kappa_st_after;
  } else {
    json["kappaQR_after"] = nullptr;
    json["kappaST_after"] = nullptr;
  }
  json["guaranteed"] = report.guaranteed;
  json["fSize"] = instance.free_set().count();
  json["cBound"] = c_bound(report.kappa_qr_before, report.kappa_st_before);
  json["conjectureBound"] =
      conjecture_bound(report.kappa_qr_before, report.kappa_st_before);
  if (!report.proof_trace.empty()) {
    json["proofTrace"] = nlohmann::ordered_json::array();
    for (const auto& step : report.proof_trace) {
      json["proofTrace"].push_back(
          {{"element", ground.label(step.element)},
           {"operation", to_string(step.op)}});
    }
  }
  return json.dump(2) + "\n";
}

}  // namespace mconn
