#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crsim/mac.hpp"
#include "crsim/metrics.hpp"
#include "crsim/replay.hpp"
#include "crsim/scenario.hpp"
#include "crsim/svg.hpp"

namespace {

// Relative output paths land in $CRSIM_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("CRSIM_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string d = dir;
  if (d.back() != '/') d += '/';
  return d + path;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& sets,
            const std::string& trace_path) {
  crsim::SimConfig cfg;
  if (!config_path.empty()) cfg = crsim::load_config_file(config_path);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    }
    crsim::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg = crsim::validate_config(cfg);

  bool want_trace = !trace_path.empty();
  crsim::SimResult res = crsim::run_simulation(cfg, want_trace);
  const auto& m = res.metrics;

  std::cout << "protocol: " << crsim::protocol_name(cfg.protocol) << '\n'
            << "seed: " << cfg.seed << '\n'
            << "horizon_slots: " << m.horizon << '\n'
            << "delivered_bits: " << m.delivered_bits() << '\n'
            << "completed_packets: " << m.completed_packets() << '\n';
  std::printf("throughput_bps: %.17g\n", crsim::throughput_bps(m));
  if (auto svc = crsim::avg_service_time_s(m)) {
    std::printf("avg_service_time_s: %.17g\n", *svc);
  } else {
    std::cout << "avg_service_time_s: undefined\n";
  }
  std::cout << "handoffs: " << m.handoffs << '\n'
            << "pu_su_collision_slots: " << m.pu_su_collision_slots << '\n'
            << "su_su_collision_slots: " << m.su_su_collision_slots << '\n'
            << "conservation_violations: " << m.conservation_violations << '\n';
  if (want_trace) {
    write_file(resolve_out(trace_path), res.trace.serialize());
    std::printf("trace_digest: %016llx\n",
                static_cast<unsigned long long>(res.trace.digest()));
  }
  return m.conservation_violations == 0 ? 0 : 1;
}

int cmd_scenario(const std::string& name, int seeds, const std::string& out_csv) {
  const auto& presets = crsim::scenario_preset_names();
  crsim::ScenarioSpec spec =
      std::find(presets.begin(), presets.end(), name) != presets.end()
          ? crsim::scenario_preset(name)
          : crsim::load_scenario_file(name);
  if (seeds > 0) spec.seeds = seeds;
  auto rows = crsim::run_scenario(spec);
  std::string path = resolve_out(out_csv.empty() ? spec.name + ".csv" : out_csv);
  std::ostringstream body;
  crsim::write_csv(rows, body);
  write_file(path, body.str());
  std::cout << "wrote " << rows.size() << " rows to " << path << '\n';
  return 0;
}

int cmd_plot(const std::string& in_csv, const std::string& x, const std::string& y,
             const std::string& series, const std::string& out_svg) {
  std::ifstream in(in_csv);
  if (!in) throw std::runtime_error("cannot open '" + in_csv + "'");
  auto rows = crsim::read_csv(in);
  std::string path = resolve_out(out_svg);
  write_file(path, crsim::emit_plot(rows, x, y, series));
  std::cout << "wrote " << path << '\n';
  return 0;
}

int cmd_replay() {
  crsim::ReplayResult replay = crsim::run_replay();
  for (const auto& line : replay.narrative) std::cout << line << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slotted-frame spectrum handoff simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one simulation and print its metrics");
  std::string config_path;
  std::vector<std::string> sets;
  std::string trace_path;
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--set", sets, "override one config key (key=value), repeatable");
  run->add_option("--trace", trace_path, "write the event trace to this file");

  auto* scen = app.add_subcommand("scenario", "run a sweep preset or scenario file");
  std::string scen_name;
  int seeds = 0;
  std::string out_csv;
  scen->add_option("name", scen_name, "preset name (fig4..fig8) or scenario file path")
      ->required();
  scen->add_option("--seeds", seeds, "run seeds 1..N per grid point");
  scen->add_option("--out", out_csv, "output CSV path (default <name>.csv)");

  auto* plot = app.add_subcommand("plot", "render a results CSV as an SVG line chart");
  std::string in_csv, x_col, y_col, series_col, out_svg;
  plot->add_option("--in", in_csv, "input CSV")->required();
  plot->add_option("--x", x_col, "x column")->required();
  plot->add_option("--y", y_col, "y column")->required();
  plot->add_option("--series", series_col, "series column (one line per value)")->required();
  plot->add_option("--out", out_svg, "output SVG path")->required();

  app.add_subcommand("replay-fig1", "replay the worked single-pair handoff example");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, sets, trace_path);
    if (scen->parsed()) return cmd_scenario(scen_name, seeds, out_csv);
    if (plot->parsed()) return cmd_plot(in_csv, x_col, y_col, series_col, out_svg);
    return cmd_replay();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
