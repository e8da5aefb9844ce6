#include "crsim/trace.hpp"

#include <sstream>

namespace crsim {

void EventTrace::push(Slot t, EventKind kind, std::int64_t f0, std::int64_t f1, std::int64_t f2,
                      std::int64_t f3) {
  if (!enabled_) return;
  events_.push_back({t, kind, f0, f1, f2, f3});
}

void EventTrace::frame(Slot t, std::uint64_t index) {
  push(t, EventKind::frame, static_cast<std::int64_t>(index));
}
void EventTrace::rdv(Slot t, int channel) { push(t, EventKind::rdv, channel); }
void EventTrace::pu_on(Slot t, int channel) { push(t, EventKind::pu_on, channel); }
void EventTrace::pu_off(Slot t, int channel) { push(t, EventKind::pu_off, channel); }
void EventTrace::decision(Slot t, int pair, int channel, Slot stay_slots, bool switching,
                          Slot pu_onset) {
  // A decision implies a PU with at least one busy slot left, so
  // stay_slots >= 1 and its sign can carry the chosen action.
  push(t, EventKind::decision, pair, channel,
       switching ? static_cast<std::int64_t>(stay_slots) : -static_cast<std::int64_t>(stay_slots),
       static_cast<std::int64_t>(pu_onset));
}
void EventTrace::rts(Slot t, int pair, int mini_slot, int channel) {
  push(t, EventKind::rts, pair, mini_slot, channel);
}
void EventTrace::cts(Slot t, int pair, int mini_slot, int channel) {
  push(t, EventKind::cts, pair, mini_slot, channel);
}
void EventTrace::assign(Slot t, int pair, int channel) { push(t, EventKind::assign, pair, channel); }
void EventTrace::handoff(Slot t, int pair, int from, int to) {
  push(t, EventKind::handoff, pair, from, to);
}
void EventTrace::broadcast(Slot t, int pair) { push(t, EventKind::broadcast, pair); }
void EventTrace::pause(Slot t, int pair, int channel) { push(t, EventKind::pause, pair, channel); }
void EventTrace::complete(Slot t, int pair, Slot arrival, Slot service_slots) {
  push(t, EventKind::complete, pair, static_cast<std::int64_t>(arrival),
       static_cast<std::int64_t>(service_slots));
}
void EventTrace::collision(Slot t, int pair, int channel, bool with_primary) {
  push(t, EventKind::collision, pair, channel, with_primary ? 0 : 1);
}

namespace {

void append_line(std::ostringstream& out, const Event& e) {
  out << e.slot << '\t';
  switch (e.kind) {
    case EventKind::frame:
      out << "frame\t" << e.f0;
      break;
    case EventKind::rdv:
      out << "rdv\t" << (e.f0 + 1);
      break;
    case EventKind::pu_on:
      out << "pu_on\t" << (e.f0 + 1);
      break;
    case EventKind::pu_off:
      out << "pu_off\t" << (e.f0 + 1);
      break;
    case EventKind::decision:
      out << "decision\t" << (e.f0 + 1) << '\t' << (e.f1 + 1) << '\t'
          << (e.f2 < 0 ? -e.f2 : e.f2) << '\t' << (e.f2 >= 0 ? "switch" : "stay") << '\t'
          << e.f3;
      break;
    case EventKind::rts:
      out << "rts\t" << (e.f0 + 1) << '\t' << (e.f1 + 1) << '\t' << (e.f2 + 1);
      break;
    case EventKind::cts:
      out << "cts\t" << (e.f0 + 1) << '\t' << (e.f1 + 1) << '\t' << (e.f2 + 1);
      break;
    case EventKind::assign:
      out << "assign\t" << (e.f0 + 1) << '\t' << (e.f1 + 1);
      break;
    case EventKind::handoff:
      out << "handoff\t" << (e.f0 + 1) << '\t' << (e.f1 + 1) << '\t' << (e.f2 + 1);
      break;
    case EventKind::broadcast:
      out << "broadcast\t" << (e.f0 + 1);
      break;
    case EventKind::pause:
      out << "pause\t" << (e.f0 + 1) << '\t' << (e.f1 + 1);
      break;
    case EventKind::complete:
      out << "complete\t" << (e.f0 + 1) << '\t' << e.f1 << '\t' << e.f2;
      break;
    case EventKind::collision:
      out << "collision\t" << (e.f0 + 1) << '\t' << (e.f1 + 1) << '\t'
          << (e.f2 == 0 ? "pu" : "su");
      break;
  }
  out << '\n';
}

}  // namespace

std::string EventTrace::serialize() const {
  std::ostringstream out;
  for (const Event& e : events_) append_line(out, e);
  return out.str();
}

std::uint64_t EventTrace::digest() const { return fnv1a64(serialize()); }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace crsim
