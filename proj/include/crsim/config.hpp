#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace crsim {

using Slot = std::uint64_t;

enum class Protocol { gcs_srv, random_select, probability };

std::string_view protocol_name(Protocol p);
Protocol protocol_from_name(std::string_view name);

// Full parameter set for one simulation run. Field names double as the
// keys of the flat key=value config file format.
struct SimConfig {
  int num_channels = 10;                 // M, licensed channels
  int num_pairs = 10;                    // K, SU transmitter/receiver pairs
  std::uint64_t bit_rate = 1'000'000;    // bits per second, all channels
  double slot_duration = 0.001;          // seconds
  double lambda_p = 5.0;                 // PU packet arrivals per second per channel
  double lambda_s = 500.0;               // SU packet arrivals per second per pair
  std::uint64_t pu_packet_bits = 100'000;
  std::uint64_t su_packet_bits = 60'000;
  Slot handoff_delay = 1;                // t_h, channel changing time in slots
  Slot data_phase_slots = 10;            // D, data slots following each control slot
  Slot horizon = 100'000;                // simulated slots
  std::uint64_t seed = 1;
  Protocol protocol = Protocol::gcs_srv;
  Slot prob_window = 1000;               // W, idle-history window of the probability baseline

  std::uint64_t bits_per_slot() const;
  Slot pu_packet_slots() const;
  Slot su_packet_slots() const;
};

// Checks ranges and cross-field consistency; throws std::invalid_argument
// naming the offending key. Returns the config unchanged on success, so
// validating twice is a no-op.
SimConfig validate_config(const SimConfig& raw);

// Slot arithmetic of the split-phase frame: one control slot (subdivided
// into 2K mini-slots) followed by D data slots.
struct FrameLayout {
  Slot control_slots = 1;
  int mini_slots = 0;     // 2K, carved out of the control slot
  Slot data_slots = 0;    // D
  Slot frame_length = 0;  // control_slots + data_slots

  Slot control_slot_of(std::uint64_t frame) const { return frame * frame_length; }
};

enum class SlotKind { control, data };

struct SlotRef {
  std::uint64_t frame = 0;
  SlotKind kind = SlotKind::control;
  Slot data_offset = 0;  // 0-based position within the data span; 0 for control slots
};

FrameLayout frame_layout(const SimConfig& cfg);
SlotRef locate_slot(const FrameLayout& layout, Slot t);
Slot slot_of(const FrameLayout& layout, const SlotRef& ref);

// key=value file parsing; '#' starts a comment, blank lines ignored.
// Unknown keys and unparsable values throw std::invalid_argument.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);
SimConfig parse_config(std::istream& in);
SimConfig load_config_file(const std::string& path);

}  // namespace crsim
