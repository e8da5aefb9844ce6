#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crsim/config.hpp"

namespace crsim {

enum class EventKind {
  frame,      // control slot reached: frame index
  rdv,        // rendezvous channel chosen for a coordinating control phase
  pu_on,      // channel turns busy: channel
  pu_off,     // channel turns idle: channel
  decision,   // stay/switch evaluation: pair, channel, S_k, action, PU onset slot
  rts,        // pair, mini-slot, channel
  cts,        // pair, mini-slot, channel
  assign,     // fresh assignment: pair, channel
  handoff,    // pair, from, to
  broadcast,  // pair announces its claim: pair
  pause,      // transmission suspended for a PU: pair, channel
  complete,   // packet done: pair, arrival slot, service slots
  collision,  // pair, channel, kind (0 = with PU, 1 = SU vs SU)
};

// One trace record. Field meaning depends on kind; serialization is the
// readable contract, accessors below are conveniences for tests.
struct Event {
  Slot slot = 0;
  EventKind kind = EventKind::frame;
  std::int64_t f0 = -1;
  std::int64_t f1 = -1;
  std::int64_t f2 = -1;
  std::int64_t f3 = -1;
};

class EventTrace {
 public:
  explicit EventTrace(bool enabled = true) : enabled_(enabled) {}

  bool enabled() const { return enabled_; }

  void frame(Slot t, std::uint64_t index);
  void rdv(Slot t, int channel);
  void pu_on(Slot t, int channel);
  void pu_off(Slot t, int channel);
  void decision(Slot t, int pair, int channel, Slot stay_slots, bool switching, Slot pu_onset);
  void rts(Slot t, int pair, int mini_slot, int channel);
  void cts(Slot t, int pair, int mini_slot, int channel);
  void assign(Slot t, int pair, int channel);
  void handoff(Slot t, int pair, int from, int to);
  void broadcast(Slot t, int pair);
  void pause(Slot t, int pair, int channel);
  void complete(Slot t, int pair, Slot arrival, Slot service_slots);
  void collision(Slot t, int pair, int channel, bool with_primary);

  const std::vector<Event>& events() const { return events_; }

  // Tab-separated lines, one event per line, channels/pairs/mini-slots
  // printed 1-based. Slots never decrease from line to line.
  std::string serialize() const;
  // FNV-1a over the serialized form; equal digests mean equal traces.
  std::uint64_t digest() const;

 private:
  void push(Slot t, EventKind kind, std::int64_t f0 = -1, std::int64_t f1 = -1,
            std::int64_t f2 = -1, std::int64_t f3 = -1);

  bool enabled_ = true;
  std::vector<Event> events_;
};

std::uint64_t fnv1a64(std::string_view data);

}  // namespace crsim
