#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "crsim/config.hpp"

namespace crsim {

// Paper flags, maintained by the engine: FDT while a packet is in
// service, FCS while the pair needs coordination at the next control
// phase, FDS while it holds a live authorization to transmit.
struct SuFlags {
  bool fdt = false;
  bool fcs = false;
  bool fds = false;
};

struct Packet {
  Slot arrival = 0;
  Slot first_contention = 0;
  std::uint64_t remaining_bits = 0;
};

struct SuPairState {
  int id = 0;
  std::deque<Slot> queue;           // arrival slots of waiting packets
  std::optional<Packet> in_flight;  // packet currently in service
  std::optional<int> channel;       // assigned channel, if any
  std::optional<int> last_channel;  // most recently vacated channel
  Slot retune_until = 0;            // first slot transmission is possible
  SuFlags flags;
  bool pause_logged = false;        // current PU interruption already traced
  std::size_t arrival_cursor = 0;   // next unread index into the arrival list
};

}  // namespace crsim
