#include "crsim/replay.hpp"

#include <string>

namespace crsim {

SimConfig replay_config() {
  SimConfig cfg;
  cfg.num_channels = 5;
  cfg.num_pairs = 1;
  cfg.horizon = 200;
  cfg.seed = 1;
  cfg.protocol = Protocol::gcs_srv;
  return cfg;
}

PuSchedule replay_schedule() {
  // Channels 1 and 2 are pinned busy; channel 3 hosts the first burst the
  // pair must dodge; channel 4 is the handoff target whose PU comes back;
  // channel 5 exists to lose the ranking twice.
  std::vector<ChannelSchedule> ch(5);
  ch[0].busy = {{0, 120}};
  ch[1].busy = {{0, 120}};
  ch[2].busy = {{11, 110}};
  ch[3].busy = {{2, 5}, {19, 28}};
  ch[4].busy = {{3, 8}, {15, 114}};
  return PuSchedule(std::move(ch), replay_config().horizon);
}

std::vector<SuArrivals> replay_arrivals() {
  std::vector<SuArrivals> arrivals(1);
  arrivals[0].slots = {0};
  return arrivals;
}

ReplayResult run_replay() {
  ReplayResult out;
  out.sim = run_simulation(replay_config(), replay_schedule(), replay_arrivals());

  // One line per decision, anchored on the slot the triggering PU
  // appeared (the start of its busy period), matching how the sequence
  // reads on a channel usage chart.
  const auto& events = out.sim.trace.events();
  std::string last;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    if (e.kind != EventKind::decision) continue;
    bool switching = e.f2 >= 0;
    std::string line;
    if (switching) {
      // The matching handoff event, if the claim landed, sits later in
      // the same control slot.
      const Event* moved = nullptr;
      for (std::size_t j = i + 1; j < events.size() && events[j].slot == e.slot; ++j) {
        if (events[j].kind == EventKind::handoff && events[j].f0 == e.f0) {
          moved = &events[j];
          break;
        }
      }
      if (moved != nullptr) {
        line = "switch " + std::to_string(moved->f1 + 1) + "->" + std::to_string(moved->f2 + 1) +
               " at slot " + std::to_string(e.f3);
      } else {
        line = "stay on " + std::to_string(e.f1 + 1) + " at slot " + std::to_string(e.f3);
      }
    } else {
      line = "stay on " + std::to_string(e.f1 + 1) + " at slot " + std::to_string(e.f3);
    }
    if (line != last) {
      out.narrative.push_back(line);
      last = line;
    }
  }
  return out;
}

}  // namespace crsim
