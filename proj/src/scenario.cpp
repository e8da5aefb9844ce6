#include "crsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "crsim/mac.hpp"
#include "crsim/metrics.hpp"

namespace crsim {
namespace {

std::vector<double> iota_values(double from, double to, double step) {
  std::vector<double> out;
  for (double v = from; v <= to + 1e-9; v += step) out.push_back(v);
  return out;
}

const char* kIntKeys[] = {"num_channels", "num_pairs",       "bit_rate",
                          "pu_packet_bits", "su_packet_bits", "handoff_delay",
                          "data_phase_slots", "horizon",      "seed",
                          "prob_window"};

bool integer_key(const std::string& key) {
  for (const char* k : kIntKeys) {
    if (key == k) return true;
  }
  return false;
}

std::string format_value(const std::string& key, double value) {
  if (integer_key(key)) {
    double r = std::round(value);
    if (std::abs(value - r) > 1e-9) {
      throw std::invalid_argument("sweep value " + std::to_string(value) +
                                  " is not an integer, required by " + key);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", r);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.erase(0, 1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t' || item.back() == '\r')) {
      item.pop_back();
    }
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ScenarioSpec scenario_preset(const std::string& name) {
  ScenarioSpec spec;
  spec.name = name;
  spec.base = SimConfig{};  // defaults carry the study's common parameters
  spec.seeds = 1;
  if (name == "fig4") {
    spec.sweep_key = "lambda_p";
    spec.sweep_values = iota_values(1, 9, 1);
    spec.protocols = {Protocol::gcs_srv};
  } else if (name == "fig5" || name == "fig6") {
    spec.sweep_key = "lambda_p";
    spec.sweep_values = iota_values(1, 9, 1);
    spec.protocols = {Protocol::gcs_srv, Protocol::random_select, Protocol::probability};
  } else if (name == "fig7") {
    spec.base.num_channels = 20;
    spec.base.lambda_p = 5;
    spec.sweep_key = "num_pairs";
    spec.sweep_values = iota_values(2, 20, 2);
    spec.protocols = {Protocol::gcs_srv, Protocol::random_select, Protocol::probability};
  } else if (name == "fig8") {
    spec.base.num_pairs = 10;
    spec.base.lambda_p = 5;
    spec.sweep_key = "num_channels";
    spec.sweep_values = iota_values(2, 30, 2);
    spec.protocols = {Protocol::gcs_srv, Protocol::random_select, Protocol::probability};
  } else {
    throw std::invalid_argument("unknown scenario preset '" + name +
                                "' (known: fig4 fig5 fig6 fig7 fig8)");
  }
  return spec;
}

const std::vector<std::string>& scenario_preset_names() {
  static const std::vector<std::string> names = {"fig4", "fig5", "fig6", "fig7", "fig8"};
  return names;
}

ScenarioSpec parse_scenario(std::istream& in) {
  ScenarioSpec spec;
  spec.name = "custom";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = line;
    if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    auto body = split(s, '=');
    if (body.empty()) continue;
    if (body.size() != 2) {
      throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string& key = body[0];
    const std::string& value = body[1];
    if (key == "name") {
      spec.name = value;
    } else if (key == "sweep") {
      spec.sweep_key = value;
    } else if (key == "sweep_values") {
      for (const auto& v : split(value, ',')) spec.sweep_values.push_back(std::stod(v));
    } else if (key == "protocols") {
      for (const auto& v : split(value, ',')) spec.protocols.push_back(protocol_from_name(v));
    } else if (key == "seeds") {
      spec.seeds = std::stoi(value);
    } else {
      apply_setting(spec.base, key, value);
    }
  }
  if (spec.protocols.empty()) spec.protocols = {spec.base.protocol};
  if (spec.sweep_key.empty() != spec.sweep_values.empty()) {
    throw std::invalid_argument("scenario: sweep and sweep_values must come together");
  }
  if (spec.sweep_key.empty()) {
    spec.sweep_key = "lambda_p";
    spec.sweep_values = {spec.base.lambda_p};
  }
  if (spec.seeds < 1) throw std::invalid_argument("scenario: seeds must be >= 1");
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

std::vector<ResultRow> run_scenario(const ScenarioSpec& spec) {
  if (spec.seeds < 1) throw std::invalid_argument("run_scenario: need at least one seed");
  if (spec.sweep_values.empty()) throw std::invalid_argument("run_scenario: empty sweep");
  std::vector<ResultRow> rows;
  rows.reserve(spec.protocols.size() * spec.sweep_values.size() *
               static_cast<std::size_t>(spec.seeds));
  for (Protocol proto : spec.protocols) {
    for (double value : spec.sweep_values) {
      SimConfig cfg = spec.base;
      const std::string formatted = format_value(spec.sweep_key, value);
      try {
        apply_setting(cfg, spec.sweep_key, formatted);
        cfg.protocol = proto;
        cfg = validate_config(cfg);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("sweep point " + spec.sweep_key + "=" + formatted + ": " +
                                    e.what());
      }
      for (int seed = 1; seed <= spec.seeds; ++seed) {
        cfg.seed = static_cast<std::uint64_t>(seed);
        SimResult res = run_simulation(cfg, /*collect_trace=*/false);
        if (res.metrics.conservation_violations != 0) {
          throw std::logic_error("bit conservation broken at " + spec.sweep_key + "=" + formatted +
                                 " seed " + std::to_string(seed));
        }
        ResultRow row;
        row.scenario = spec.name;
        row.protocol = std::string(protocol_name(proto));
        row.seed = cfg.seed;
        row.num_channels = cfg.num_channels;
        row.num_pairs = cfg.num_pairs;
        row.lambda_p = cfg.lambda_p;
        row.lambda_s = cfg.lambda_s;
        row.throughput_bps = throughput_bps(res.metrics);
        auto service = avg_service_time_s(res.metrics);
        row.avg_service_time_s = service ? *service : std::nan("");
        row.pu_su_collision_slots = res.metrics.pu_su_collision_slots;
        row.su_su_collision_slots = res.metrics.su_su_collision_slots;
        row.handoffs = res.metrics.handoffs;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

static const char kCsvHeader[] =
    "scenario,protocol,seed,M,K,lambda_p,lambda_s,throughput_bps,avg_service_time_s,"
    "pu_su_collision_slots,su_su_collision_slots,handoffs";

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.protocol << ',' << r.seed << ',' << r.num_channels << ','
        << r.num_pairs << ',' << format_double(r.lambda_p) << ',' << format_double(r.lambda_s)
        << ',' << format_double(r.throughput_bps) << ',' << format_double(r.avg_service_time_s)
        << ',' << r.pu_su_collision_slots << ',' << r.su_su_collision_slots << ',' << r.handoffs
        << '\n';
  }
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split(line, ',');
  auto expected = split(kCsvHeader, ',');
  if (header.size() != expected.size()) {
    throw std::invalid_argument("csv: header has " + std::to_string(header.size()) +
                                " columns, expected " + std::to_string(expected.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (header[i] != expected[i]) {
      throw std::invalid_argument("csv: missing column '" + expected[i] + "' (found '" +
                                  header[i] + "')");
    }
  }
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != expected.size()) {
      throw std::invalid_argument("csv: line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(expected.size()) + " fields, got " +
                                  std::to_string(f.size()));
    }
    try {
      ResultRow r;
      r.scenario = f[0];
      r.protocol = f[1];
      r.seed = std::stoull(f[2]);
      r.num_channels = std::stoi(f[3]);
      r.num_pairs = std::stoi(f[4]);
      r.lambda_p = std::stod(f[5]);
      r.lambda_s = std::stod(f[6]);
      r.throughput_bps = std::stod(f[7]);
      r.avg_service_time_s = std::stod(f[8]);
      r.pu_su_collision_slots = std::stoull(f[9]);
      r.su_su_collision_slots = std::stoull(f[10]);
      r.handoffs = std::stoull(f[11]);
      rows.push_back(std::move(r));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("csv: line " + std::to_string(lineno) + ": malformed number");
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("csv: line " + std::to_string(lineno) + ": number out of range");
    }
  }
  return rows;
}

double numeric_field(const ResultRow& row, const std::string& column) {
  if (column == "seed") return static_cast<double>(row.seed);
  if (column == "M") return row.num_channels;
  if (column == "K") return row.num_pairs;
  if (column == "lambda_p") return row.lambda_p;
  if (column == "lambda_s") return row.lambda_s;
  if (column == "throughput_bps") return row.throughput_bps;
  if (column == "avg_service_time_s") return row.avg_service_time_s;
  if (column == "pu_su_collision_slots") return static_cast<double>(row.pu_su_collision_slots);
  if (column == "su_su_collision_slots") return static_cast<double>(row.su_su_collision_slots);
  if (column == "handoffs") return static_cast<double>(row.handoffs);
  throw std::invalid_argument("unknown numeric column '" + column + "'");
}

std::string text_field(const ResultRow& row, const std::string& column) {
  if (column == "scenario") return row.scenario;
  if (column == "protocol") return row.protocol;
  char buf[64];
  double v = numeric_field(row, column);
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool is_numeric_column(const std::string& column) {
  return column != "scenario" && column != "protocol";
}

}  // namespace crsim
