// mconn: matroid connectivity toolkit command line.
//
// Exit codes: 0 success, 2 parse/validation error, 3 size cap exceeded,
// 4 theorem-violation alarm (the offending instance is persisted).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mconn/certificates.hpp"
#include "mconn/classification.hpp"
#include "mconn/experiments.hpp"
#include "mconn/intertwine.hpp"
#include "mconn/io.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitTheoremViolation = 4;

struct GlobalOptions {
  int threads = 0;
};

mconn::IntertwineInstance load_instance(const std::string& path,
                                        const GlobalOptions& global) {
  std::ifstream in(path);
  if (!in) throw mconn::ParseError(0, "cannot open instance file '" + path + "'");
  const auto data = mconn::parse_instance(in);
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  return mconn::build_instance(data, base_dir.empty() ? "." : base_dir,
                               {global.threads, std::nullopt});
}

std::pair<mconn::Subset, mconn::Subset> pick_pair(
    const mconn::IntertwineInstance& instance, const std::string& pair) {
  if (pair == "QR") return {instance.q(), instance.r()};
  if (pair == "ST") return {instance.s(), instance.t()};
  throw mconn::ParseError(0, "--pair must be QR or ST");
}

void run_kappa(const std::string& path, const std::string& pair,
               const GlobalOptions& global) {
  const auto instance = load_instance(path, global);
  const auto [q, r] = pick_pair(instance, pair);
  const auto result =
      mconn::kappa(*instance.oracle(), q, r, {global.threads, std::nullopt});
  std::cout << "kappa=" << result.value << " witness="
            << instance.oracle()->ground().format(result.witness) << "\n";
}

void run_classify(const std::string& path, const std::string& pair,
                  const GlobalOptions& global) {
  const auto instance = load_instance(path, global);
  const auto [q, r] = pick_pair(instance, pair);
  const auto& ground = instance.oracle()->ground();
  const mconn::Subset free = (q | r).complement(instance.oracle()->size());
  const auto rows = mconn::classify_all(instance.oracle(), q, r, free,
                                        {global.threads, std::nullopt});
  std::cout << "element deletable contractible flexible kappa_after_delete "
               "kappa_after_contract\n";
  for (const auto& row : rows) {
    std::cout << ground.label(row.element) << ' '
              << (row.deletable ? "yes" : "no") << ' '
              << (row.contractible ? "yes" : "no") << ' '
              << (row.flexible() ? "yes" : "no") << ' '
              << row.kappa_after_delete << ' ' << row.kappa_after_contract
              << "\n";
  }
}

/// Persists the instance of a theorem violation next to the input and
/// reports where; used by the exit-4 path.
std::string persist_violation(const mconn::TheoremViolation& violation,
                              const std::string& stem) {
  const std::string path = stem + ".violation.instance";
  std::ofstream out(path);
  out << mconn::serialize_instance(violation.instance());
  return path;
}

void print_intertwine_report(const mconn::IntertwineInstance& instance,
                             const mconn::IntertwineReport& report) {
  const auto& ground = instance.oracle()->ground();
  if (report.element) {
    std::cout << "element=" << ground.label(*report.element)
              << " op=" << mconn::to_string(*report.operation)
              << " kappaQR=" << *report.kappa_qr_after
              << " kappaST=" << *report.kappa_st_after << " (both preserved)\n";
  } else {
    std::cout << "none (|F|=" << instance.free_set().count()
              << " < c=" << mconn::c_bound(report.kappa_qr_before,
                                           report.kappa_st_before)
              << ", consistent)\n";
  }
}

void run_intertwine(const std::string& path, bool shrink, bool proof_path,
                    const std::string& json_out, const GlobalOptions& global) {
  const auto instance = load_instance(path, global);
  mconn::SearchOptions options;
  options.threads = global.threads;
  options.proof_path = proof_path;
  try {
    if (shrink) {
      const auto outcome = mconn::shrink_preserving_both(instance, options);
      const auto& ground = instance.oracle()->ground();
      for (const auto& step : outcome.log) {
        std::cout << mconn::to_string(step.op) << " "
                  << ground.label(step.element) << "\n";
      }
      const int final_f =
          outcome.result->size() - (outcome.result->to_view(instance.q()) |
                                    outcome.result->to_view(instance.r()) |
                                    outcome.result->to_view(instance.s()) |
                                    outcome.result->to_view(instance.t()))
                                       .count();
      std::cout << "steps=" << outcome.log.size() << " final_F=" << final_f
                << " consistent=" << (outcome.consistent ? "yes" : "no")
                << "\n";
      return;
    }
    const auto report = mconn::find_intertwined_element(instance, options);
    print_intertwine_report(instance, report);
    if (!json_out.empty()) {
      std::ofstream out(json_out);
      out << mconn::intertwine_report_json(instance, report);
    }
  } catch (const mconn::TheoremViolation& violation) {
    const std::string saved = persist_violation(violation, path);
    std::cerr << "theorem violation: " << violation.what()
              << "\ninstance persisted to " << saved << "\n";
    std::exit(kExitTheoremViolation);
  }
}

void run_grid(int k, int l, bool extremal, const std::string& out_path,
              const GlobalOptions& global) {
  const mconn::KappaOptions options{global.threads, std::nullopt};
  if (!extremal) {
    const auto grid = mconn::build_grid_instance(k, l, options);
    std::cout << "grid k=" << k << " l=" << l
              << " |E|=" << grid.instance.oracle()->size()
              << " |F|=" << grid.instance.free_set().count()
              << " kappaQR=" << grid.instance.kappa_qr()
              << " kappaST=" << grid.instance.kappa_st() << "\n";
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << mconn::serialize_instance(grid.instance);
      std::cout << "instance written to " << out_path << "\n";
    }
    return;
  }
  const auto report = mconn::run_extremal_check(k, l, options);
  const auto& ground = report.grid.instance.oracle()->ground();
  std::cout << "element kQRdel kSTdel kQRcon kSTcon\n";
  for (const auto& row : report.rows) {
    std::cout << ground.label(row.element) << ' ' << row.kappa_qr_delete << ' '
              << row.kappa_st_delete << ' ' << row.kappa_qr_contract << ' '
              << row.kappa_st_contract << "\n";
  }
  if (report.any_qualifying) {
    std::cout << "qualifying element exists among " << report.rows.size()
              << " candidates\n";
  } else {
    std::cout << "no qualifying element among " << report.rows.size()
              << " candidates\n";
  }
}

void run_nested(const std::string& path, const std::string& pair,
                const GlobalOptions& global) {
  const auto instance = load_instance(path, global);
  const auto [q, r] = pick_pair(instance, pair);
  const mconn::KappaOptions options{global.threads, std::nullopt};
  const auto& oracle = instance.oracle();
  const auto& ground = oracle->ground();
  // Certificates thread the non-flexible part of the free set.
  const mconn::Subset free = (q | r).complement(oracle->size());
  mconn::Subset non_flexible;
  for (const auto& row : mconn::classify_all(oracle, q, r, free, options)) {
    if (!row.flexible()) {
      non_flexible |= mconn::Subset::single(row.element);
    }
  }
  const auto cert =
      mconn::build_nested_sequence(oracle, q, r, non_flexible, options);
  std::cout << "F=" << ground.format(non_flexible) << "\n";
  for (std::size_t i = 0; i < cert.length(); ++i) {
    std::cout << i + 1 << ": " << ground.label(cert.ordering[i]) << " "
              << ground.format(cert.chain[i]) << " ["
              << mconn::to_string(cert.branch[i]) << "]\n";
  }
  const auto report =
      mconn::verify_nested_sequence(*oracle, q, r, non_flexible, cert, options);
  const char* names[4] = {"(i)", "(ii)", "(iii)", "(iv)"};
  for (std::size_t c = 0; c < 4; ++c) {
    std::cout << names[c] << " "
              << (report.condition_pass[c] ? "PASS" : "FAIL");
    if (!report.condition_pass[c]) {
      std::cout << " at " << report.first_violation[c];
    }
    std::cout << "\n";
  }
}

mconn::ScanConfig parse_scan_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mconn::ParseError(0, "cannot open config file '" + path + "'");
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw mconn::ParseError(0,
                            std::string("config is not valid JSON: ") + e.what());
  }
  mconn::ScanConfig config;
  try {
    config.seed = json.value("seed", std::uint64_t{0});
    const std::string family = json.value("family", "graphic");
    if (family == "graphic") {
      config.family = mconn::InstanceFamily::Graphic;
    } else if (family == "linear-gf2") {
      config.family = mconn::InstanceFamily::LinearGf2;
    } else if (family == "uniform-mix") {
      config.family = mconn::InstanceFamily::UniformMix;
    } else {
      throw mconn::ParseError(0, "unknown family '" + family + "'");
    }
    const auto range = [&json](const char* name, mconn::SizeRange fallback) {
      if (!json.contains(name)) return fallback;
      const auto& value = json.at(name);
      return mconn::SizeRange{value.at(0).get<int>(), value.at(1).get<int>()};
    };
    config.elements = range("elements", {8, 12});
    config.q_size = range("qSize", {1, 1});
    config.r_size = range("rSize", {1, 1});
    config.s_size = range("sSize", {1, 1});
    config.t_size = range("tSize", {1, 1});
    config.samples = json.value("samples", 0);
    config.budget_ms = json.value("budgetMs", std::int64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw mconn::ParseError(0, std::string("bad config value: ") + e.what());
  }
  return config;
}

void run_scan(const std::string& config_path, const std::string& csv_path,
              const std::string& summary_path, const GlobalOptions& global) {
  const auto config = parse_scan_config(config_path);
  const auto result = mconn::conjecture_scan(config, global.threads);
  const std::string csv = mconn::scan_records_csv(result.records);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(csv_path);
    out << csv;
  }
  const std::string summary = mconn::scan_summary_json(result, config.samples);
  if (summary_path.empty()) {
    std::cout << summary;
  } else {
    std::ofstream out(summary_path);
    out << summary;
  }
  for (const auto& [index, text] : result.artifacts) {
    const std::string path =
        config_path + ".flagged-" + std::to_string(index) + ".instance";
    std::ofstream out(path);
    out << text;
    std::cout << "flagged instance " << index << " persisted to " << path
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid connectivity toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--threads", global.threads,
                 "worker threads (default: MCONN_THREADS or all cores)");

  std::string instance_path, pair = "QR", json_out, out_path;
  bool shrink = false, proof_path = false, extremal = false;
  int grid_k = 1, grid_l = 1;
  std::string config_path, csv_path, summary_path;

  auto* kappa_cmd = app.add_subcommand("kappa", "connectivity of a pair");
  kappa_cmd->add_option("instance", instance_path)->required();
  kappa_cmd->add_option("--pair", pair, "QR or ST");

  auto* classify_cmd =
      app.add_subcommand("classify", "deletable/contractible table");
  classify_cmd->add_option("instance", instance_path)->required();
  classify_cmd->add_option("--pair", pair, "QR or ST");

  auto* intertwine_cmd = app.add_subcommand(
      "intertwine", "find an element preserving both connectivities");
  intertwine_cmd->add_option("instance", instance_path)->required();
  intertwine_cmd->add_flag("--shrink", shrink,
                           "iterate until no qualifying element remains");
  intertwine_cmd->add_flag("--proof-path", proof_path,
                           "shrink (S,T) to a linking pair first");
  intertwine_cmd->add_option("--json", json_out, "write a JSON report here");

  auto* grid_cmd = app.add_subcommand("grid", "grid instances");
  grid_cmd->add_option("--k", grid_k)->required();
  grid_cmd->add_option("--l", grid_l)->required();
  grid_cmd->add_flag("--extremal-check", extremal,
                     "exhaustive per-element table");
  grid_cmd->add_option("--out", out_path, "write the instance file here");

  auto* nested_cmd =
      app.add_subcommand("nested", "nested separating-sequence certificate");
  nested_cmd->add_option("instance", instance_path)->required();
  nested_cmd->add_option("--pair", pair, "QR or ST");

  auto* scan_cmd = app.add_subcommand("scan", "random-instance scan");
  scan_cmd->add_option("config", config_path)->required();
  scan_cmd->add_option("--csv", csv_path, "records CSV path (default stdout)");
  scan_cmd->add_option("--summary", summary_path,
                       "summary JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (kappa_cmd->parsed()) {
      run_kappa(instance_path, pair, global);
    } else if (classify_cmd->parsed()) {
      run_classify(instance_path, pair, global);
    } else if (intertwine_cmd->parsed()) {
      run_intertwine(instance_path, shrink, proof_path, json_out, global);
    } else if (grid_cmd->parsed()) {
      run_grid(grid_k, grid_l, extremal, out_path, global);
    } else if (nested_cmd->parsed()) {
      run_nested(instance_path, pair, global);
    } else if (scan_cmd->parsed()) {
      run_scan(config_path, csv_path, summary_path, global);
    }
  } catch (const mconn::ParseError& e) {
    std::cerr << "error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const mconn::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const mconn::OverlappingSets& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const mconn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
