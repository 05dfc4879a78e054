// dcbctmn: command-line front end.
//
//   dcbctmn run <scenario.yaml> [-o results.csv] [--dump ctmn.txt]
//   dcbctmn sweep <sweep.yaml> [-o results.csv] [--workers N]
//   dcbctmn generate <deployment.yaml> [-o scenario.yaml] [--seed S] [--wlans M]
//   dcbctmn dump-ctmn <scenario.yaml> [-o ctmn.txt]
//   dcbctmn compare <results.csv> [--delta 0.5] [--wlan A] [-o comparison.csv]
//
// Exit status: 0 ok, 1 invalid input, 2 model or runtime failure.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dcb/dcb.hpp"

namespace {

struct SolverFlags {
  std::optional<double> tolerance;
  std::optional<std::size_t> state_cap;
  std::optional<std::size_t> dense_threshold;

  void add_to(CLI::App& app) {
    app.add_option("--tolerance", tolerance, "Relative residual tolerance for the equilibrium solve");
    app.add_option("--state-cap", state_cap, "Maximum global state-space size");
    app.add_option("--dense-threshold", dense_threshold, "Largest state count solved with dense LU");
  }
  void apply(dcb::ScenarioConfig& cfg) const {
    if (tolerance) cfg.solver.residual_tolerance = *tolerance;
    if (state_cap) cfg.solver.state_cap = *state_cap;
    if (dense_threshold) cfg.solver.dense_threshold = *dense_threshold;
    cfg.validate();
  }
};

// Writes to `path`, or stdout when empty.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dcb::ConfigError("cannot write '" + path + "'");
  fn(out);
  if (!out) throw dcb::ModelError("write to '" + path + "' failed");
}

void print_summary(const dcb::ScenarioReport& rep) {
  std::cerr << fmt::format("{}: |Psi|={} |S|={}\n", rep.name, rep.global_states, rep.feasible_states);
  for (const auto& w : rep.wlans)
    std::cerr << fmt::format("  {:<6} {:<3} throughput {:9.3f} Mbps  airtime {:.4f}  bandwidth {:7.2f} MHz\n",
                             w.name, dcb::to_string(w.policy), w.throughput_mbps(), w.airtime, w.bandwidth_mhz);
  if (!rep.wlans.empty())
    std::cerr << fmt::format("  total {:.3f} Mbps  jain {:.5f}  proportional {:.4f}\n",
                             rep.total_throughput_bps / 1e6, rep.fairness.jain, rep.fairness.proportional);
  for (const auto& d : rep.diagnostics) std::cerr << "warning: " << d << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytical CTMN model of dynamic channel bonding WLANs", "dcbctmn"};
  app.require_subcommand(1);

  std::string input, output, dump_path, wlan_filter;
  SolverFlags solver;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;
  std::optional<int> wlan_count;
  double delta = 0.5;

  auto* run = app.add_subcommand("run", "Evaluate one scenario and write CSV results");
  run->add_option("scenario", input, "Scenario YAML file")->required();
  run->add_option("-o,--output", output, "CSV output path (default: scenario output.csv, else stdout)");
  run->add_option("--dump", dump_path, "Also write the CTMN dump to this path");
  solver.add_to(*run);

  auto* sweep = app.add_subcommand("sweep", "Evaluate a policy grid and write CSV results");
  sweep->add_option("spec", input, "Sweep YAML file")->required();
  sweep->add_option("-o,--output", output, "CSV output path (default: stdout)");
  sweep->add_option("--workers", workers, "Parallel evaluations (default: DCB_WORKERS or CPU count)");

  auto* generate = app.add_subcommand("generate", "Write a random deployment as a scenario file");
  generate->add_option("spec", input, "Deployment YAML file")->required();
  generate->add_option("-o,--output", output, "Scenario output path (default: stdout)");
  generate->add_option("--seed", seed, "Override the spec seed");
  generate->add_option("--wlans", wlan_count, "Override the WLAN count");

  auto* dump = app.add_subcommand("dump-ctmn", "Write the feasible states and transitions of a scenario");
  dump->add_option("scenario", input, "Scenario YAML file")->required();
  dump->add_option("-o,--output", output, "Dump output path (default: stdout)");
  solver.add_to(*dump);

  auto* compare = app.add_subcommand("compare", "Classify AM versus PU runs in a results CSV");
  compare->add_option("results", input, "CSV written by run or sweep")->required();
  compare->add_option("--delta", delta, "Throughput margin in Mbps")->capture_default_str();
  compare->add_option("--wlan", wlan_filter, "Compare this WLAN instead of the aggregate");
  compare->add_option("-o,--output", output, "Comparison output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      auto cfg = dcb::io::parse_scenario_file(input);
      solver.apply(cfg);
      if (output.empty() && cfg.output.csv_path) output = *cfg.output.csv_path;
      if (dump_path.empty() && cfg.output.ctmn_dump_path) dump_path = *cfg.output.ctmn_dump_path;
      const auto a = dcb::analyze(cfg);
      print_summary(a.report);
      with_output(output, [&](std::ostream& os) { dcb::write_csv(os, dcb::report_rows(a.report)); });
      if (!dump_path.empty())
        with_output(dump_path,
                    [&](std::ostream& os) { dcb::write_ctmn_dump(os, cfg.name, a.model, a.ctmn, &a.stationary.pi); });
    } else if (*sweep) {
      const auto spec = dcb::io::parse_sweep_file(input);
      const auto rows = dcb::run_sweep(spec, dcb::resolve_workers(workers));
      std::size_t failed = 0;
      for (const auto& r : rows) failed += !r.error.empty();
      with_output(output, [&](std::ostream& os) { dcb::write_csv(os, rows); });
      if (failed) std::cerr << "warning: " << failed << " evaluation(s) failed; see the error column\n";
    } else if (*generate) {
      auto spec = dcb::io::parse_deployment_file(input);
      if (seed) spec.seed = *seed;
      if (wlan_count) spec.wlan_count = *wlan_count;
      const auto cfg = dcb::generate_deployment(spec);
      with_output(output, [&](std::ostream& os) { os << dcb::io::emit_scenario(cfg); });
    } else if (*dump) {
      auto cfg = dcb::io::parse_scenario_file(input);
      solver.apply(cfg);
      const dcb::CtmnModel model(cfg);
      const auto ctmn = dcb::explore(model);
      with_output(output, [&](std::ostream& os) { dcb::write_ctmn_dump(os, cfg.name, model, ctmn); });
    } else if (*compare) {
      std::ifstream in(input);
      if (!in) throw dcb::ConfigError("cannot open '" + input + "'");
      const auto s = dcb::compare_am_pu(in, delta, wlan_filter);
      with_output(output, [&](std::ostream& os) { dcb::write_comparison(os, s); });
      std::cerr << fmt::format("am_best {}  pu_best {}  draw {}  skipped {}\n", s.am_best, s.pu_best, s.draw,
                               s.skipped);
    }
  } catch (const dcb::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
