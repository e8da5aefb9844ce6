#pragma once

#include <string>
#include <vector>

#include "crsim/mac.hpp"

namespace crsim {

// The worked single-pair example: five channels, one SU packet, a PU
// returning to the pair's channel twice. Exercises one switch and one
// stay decision end to end.
SimConfig replay_config();
PuSchedule replay_schedule();
std::vector<SuArrivals> replay_arrivals();

struct ReplayResult {
  SimResult sim;
  std::vector<std::string> narrative;  // "switch 3->4 at slot 11" style lines
};

// Runs the fixture and condenses its trace into one line per handoff
// decision, anchored on the slot the triggering PU appeared.
ReplayResult run_replay();

}  // namespace crsim
