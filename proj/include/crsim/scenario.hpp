#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crsim/config.hpp"

namespace crsim {

// A sweep of one config key across several values, run for a set of
// protocols and seeds.
struct ScenarioSpec {
  std::string name;
  SimConfig base;
  std::string sweep_key;             // config key varied along the x axis
  std::vector<double> sweep_values;  // applied through the key=value path
  std::vector<Protocol> protocols;
  int seeds = 1;                     // runs use seeds 1..seeds
};

// One CSV row; column order is fixed by write_csv.
struct ResultRow {
  std::string scenario;
  std::string protocol;
  std::uint64_t seed = 0;
  int num_channels = 0;
  int num_pairs = 0;
  double lambda_p = 0;
  double lambda_s = 0;
  double throughput_bps = 0;
  double avg_service_time_s = 0;  // NaN when no packet completed
  std::uint64_t pu_su_collision_slots = 0;
  std::uint64_t su_su_collision_slots = 0;
  std::uint64_t handoffs = 0;
};

// Named presets reproducing the study's experiment grids.
ScenarioSpec scenario_preset(const std::string& name);
const std::vector<std::string>& scenario_preset_names();

// Scenario files reuse the config key=value format plus the keys
// name, sweep, sweep_values (comma separated), protocols (comma
// separated) and seeds.
ScenarioSpec parse_scenario(std::istream& in);
ScenarioSpec load_scenario_file(const std::string& path);

// Runs the full grid: every protocol x sweep value x seed. Throws
// std::logic_error if any run breaks bit conservation.
std::vector<ResultRow> run_scenario(const ScenarioSpec& spec);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_csv(std::istream& in);

// Column access for plotting and analysis. Numeric columns cover all
// fields except scenario and protocol.
double numeric_field(const ResultRow& row, const std::string& column);
std::string text_field(const ResultRow& row, const std::string& column);
bool is_numeric_column(const std::string& column);

}  // namespace crsim
