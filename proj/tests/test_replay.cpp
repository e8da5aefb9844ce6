#include <doctest.h>

#include "crsim/replay.hpp"

using namespace crsim;

namespace {

std::vector<Event> events_of(const EventTrace& tr, EventKind kind) {
  std::vector<Event> out;
  for (const Event& e : tr.events()) {
    if (e.kind == kind) out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("the worked example plays out switch-then-stay") {
  ReplayResult r = run_replay();

  REQUIRE(r.narrative.size() == 2);
  CHECK(r.narrative[0] == "switch 3->4 at slot 11");
  CHECK(r.narrative[1] == "stay on 4 at slot 19");

  const RunMetrics& m = r.sim.metrics;
  CHECK(m.delivered_bits() == 60000);
  CHECK(m.completed_packets() == 1);
  CHECK(m.handoffs == 1);
  CHECK(m.pu_su_collision_slots == 0);
  CHECK(m.su_su_collision_slots == 0);
  CHECK(m.conservation_violations == 0);
  CHECK(m.pairs[0].service_slots == std::vector<Slot>{76});

  const EventTrace& tr = r.sim.trace;
  auto decisions = events_of(tr, EventKind::decision);
  REQUIRE(decisions.size() == 2);
  // Frame 1: PU-3 returns for 100 slots, channel 4 offers the longest
  // vacancy, so the pair moves.
  CHECK(decisions[0].slot == 11);
  CHECK(decisions[0].f1 == 2);
  CHECK(decisions[0].f2 == 99);
  CHECK(decisions[0].f3 == 11);
  // Frame 2: PU-4's six remaining busy slots are cheaper than any move.
  CHECK(decisions[1].slot == 22);
  CHECK(decisions[1].f1 == 3);
  CHECK(decisions[1].f2 == -6);
  CHECK(decisions[1].f3 == 19);

  auto handoffs = events_of(tr, EventKind::handoff);
  REQUIRE(handoffs.size() == 1);
  CHECK(handoffs[0].slot == 11);
  CHECK(handoffs[0].f1 == 2);
  CHECK(handoffs[0].f2 == 3);

  auto pauses = events_of(tr, EventKind::pause);
  REQUIRE_FALSE(pauses.empty());
  CHECK(pauses[0].slot == 19);  // PU-4 interrupts before the next control slot
  CHECK(pauses[0].f1 == 3);

  auto completes = events_of(tr, EventKind::complete);
  REQUIRE(completes.size() == 1);
  CHECK(completes[0].slot == 75);
  CHECK(completes[0].f1 == 0);   // arrival slot
  CHECK(completes[0].f2 == 76);  // service slots

  auto assigns = events_of(tr, EventKind::assign);
  REQUIRE(assigns.size() == 1);
  CHECK(assigns[0].slot == 0);
  CHECK(assigns[0].f1 == 2);  // starts on channel 3, the widest vacancy

  CHECK(events_of(tr, EventKind::collision).empty());
}

TEST_CASE("the replay is bit-for-bit reproducible") {
  ReplayResult a = run_replay();
  ReplayResult b = run_replay();
  CHECK(a.sim.trace.digest() == b.sim.trace.digest());
  CHECK(a.narrative == b.narrative);
}
