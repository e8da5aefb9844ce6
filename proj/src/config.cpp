#include "crsim/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace crsim {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  std::size_t pos = 0;
  try {
    out = std::stoull(std::string(value), &pos);
  } catch (const std::exception&) {
    fail(std::string(key) + ": expected a non-negative integer, got '" + std::string(value) + "'");
  }
  if (pos != value.size() || (!value.empty() && value.front() == '-')) {
    fail(std::string(key) + ": expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return out;
}

int parse_int(std::string_view key, std::string_view value) {
  std::uint64_t v = parse_u64(key, value);
  if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    fail(std::string(key) + ": value out of range");
  }
  return static_cast<int>(v);
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0;
  std::size_t pos = 0;
  try {
    out = std::stod(std::string(value), &pos);
  } catch (const std::exception&) {
    fail(std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  }
  if (pos != value.size()) {
    fail(std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace

std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::gcs_srv: return "gcs_srv";
    case Protocol::random_select: return "random";
    case Protocol::probability: return "probability";
  }
  fail("unknown protocol value");
}

Protocol protocol_from_name(std::string_view name) {
  if (name == "gcs_srv") return Protocol::gcs_srv;
  if (name == "random") return Protocol::random_select;
  if (name == "probability") return Protocol::probability;
  fail("protocol: expected gcs_srv, random or probability, got '" + std::string(name) + "'");
}

std::uint64_t SimConfig::bits_per_slot() const {
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(bit_rate) * slot_duration));
}

Slot SimConfig::pu_packet_slots() const {
  return bits_per_slot() ? pu_packet_bits / bits_per_slot() : 0;
}

Slot SimConfig::su_packet_slots() const {
  return bits_per_slot() ? su_packet_bits / bits_per_slot() : 0;
}

SimConfig validate_config(const SimConfig& raw) {
  const SimConfig& c = raw;
  if (c.num_channels < 1) fail("num_channels must be >= 1");
  if (c.num_pairs < 1) fail("num_pairs must be >= 1");
  if (c.bit_rate == 0) fail("bit_rate must be positive");
  if (!(c.slot_duration > 0) || !std::isfinite(c.slot_duration)) {
    fail("slot_duration must be positive");
  }
  if (!(c.lambda_p >= 0) || !std::isfinite(c.lambda_p)) fail("lambda_p must be >= 0");
  if (!(c.lambda_s >= 0) || !std::isfinite(c.lambda_s)) fail("lambda_s must be >= 0");

  double exact_bits = static_cast<double>(c.bit_rate) * c.slot_duration;
  double rounded = std::llround(exact_bits);
  if (exact_bits < 1.0 || std::abs(exact_bits - rounded) > 1e-9 * exact_bits) {
    fail("bit_rate * slot_duration must be a whole number of bits per slot");
  }
  std::uint64_t bps = c.bits_per_slot();
  if (c.lambda_p > 0) {
    if (c.pu_packet_bits == 0) fail("pu_packet_bits must be positive when lambda_p > 0");
    if (c.pu_packet_bits % bps != 0) {
      fail("pu_packet_bits must be a whole number of slots at this bit rate");
    }
  }
  if (c.lambda_s > 0) {
    if (c.su_packet_bits == 0) fail("su_packet_bits must be positive when lambda_s > 0");
    if (c.su_packet_bits % bps != 0) {
      fail("su_packet_bits must be a whole number of slots at this bit rate");
    }
  }
  if (c.data_phase_slots < 1) fail("data_phase_slots must be >= 1");
  Slot frame = 1 + c.data_phase_slots;
  if (c.horizon < frame) fail("horizon must cover at least one frame");
  if (c.prob_window < 1) fail("prob_window must be >= 1");
  return raw;
}

FrameLayout frame_layout(const SimConfig& cfg) {
  FrameLayout out;
  out.control_slots = 1;
  out.mini_slots = 2 * cfg.num_pairs;
  out.data_slots = cfg.data_phase_slots;
  out.frame_length = out.control_slots + out.data_slots;
  return out;
}

SlotRef locate_slot(const FrameLayout& layout, Slot t) {
  SlotRef ref;
  ref.frame = t / layout.frame_length;
  Slot offset = t % layout.frame_length;
  if (offset == 0) {
    ref.kind = SlotKind::control;
    ref.data_offset = 0;
  } else {
    ref.kind = SlotKind::data;
    ref.data_offset = offset - 1;
  }
  return ref;
}

Slot slot_of(const FrameLayout& layout, const SlotRef& ref) {
  Slot base = ref.frame * layout.frame_length;
  if (ref.kind == SlotKind::control) return base;
  if (ref.data_offset >= layout.data_slots) {
    throw std::out_of_range("slot_of: data offset beyond the data span");
  }
  return base + 1 + ref.data_offset;
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "num_channels") cfg.num_channels = parse_int(key, value);
  else if (key == "num_pairs") cfg.num_pairs = parse_int(key, value);
  else if (key == "bit_rate") cfg.bit_rate = parse_u64(key, value);
  else if (key == "slot_duration") cfg.slot_duration = parse_double(key, value);
  else if (key == "lambda_p") cfg.lambda_p = parse_double(key, value);
  else if (key == "lambda_s") cfg.lambda_s = parse_double(key, value);
  else if (key == "pu_packet_bits") cfg.pu_packet_bits = parse_u64(key, value);
  else if (key == "su_packet_bits") cfg.su_packet_bits = parse_u64(key, value);
  else if (key == "handoff_delay") cfg.handoff_delay = parse_u64(key, value);
  else if (key == "data_phase_slots") cfg.data_phase_slots = parse_u64(key, value);
  else if (key == "horizon") cfg.horizon = parse_u64(key, value);
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "protocol") cfg.protocol = protocol_from_name(value);
  else if (key == "prob_window") cfg.prob_window = parse_u64(key, value);
  else fail("unknown config key '" + std::string(key) + "'");
}

SimConfig parse_config(std::istream& in) {
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      fail("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace crsim
