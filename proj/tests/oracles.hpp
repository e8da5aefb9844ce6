#pragma once

// Brute-force reference implementations used to check the library. These
// deliberately avoid the library's data structures and algorithms: plain
// per-slot scans and a literal single-server queue stepper.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "crsim/config.hpp"
#include "crsim/rng.hpp"
#include "crsim/traffic.hpp"

namespace oracle {

using crsim::Slot;

// Expands an interval schedule into one flag per slot.
inline std::vector<bool> expand_busy(const crsim::ChannelSchedule& sched, Slot horizon) {
  std::vector<bool> busy(horizon, false);
  for (const auto& b : sched.busy) {
    for (Slot t = b.start; t <= b.end && t < horizon; ++t) busy[t] = true;
  }
  return busy;
}

// Literal M/D/1 stepper: walk every slot, start a packet whenever the
// server is free and someone queued, mark served slots busy.
inline std::vector<bool> md1_busy(const std::vector<Slot>& arrival_slots, Slot packet_slots,
                                  Slot horizon) {
  std::vector<bool> busy(horizon, false);
  std::size_t next = 0;
  std::uint64_t queued = 0;
  Slot remaining = 0;
  for (Slot t = 0; t < horizon; ++t) {
    while (next < arrival_slots.size() && arrival_slots[next] == t) {
      ++queued;
      ++next;
    }
    if (remaining == 0 && queued > 0) {
      --queued;
      remaining = packet_slots;
    }
    if (remaining > 0) {
      busy[t] = true;
      --remaining;
    }
  }
  return busy;
}

// Replays the generator's arrival sampling (cumulative exponential gaps
// floored onto the slot grid) so the queue mechanics can be compared on
// identical arrivals.
inline std::vector<Slot> poisson_arrival_slots(crsim::RandomStream& rs, double rate,
                                               double slot_duration, Slot horizon) {
  std::vector<Slot> out;
  double horizon_s = static_cast<double>(horizon) * slot_duration;
  double t = 0.0;
  for (;;) {
    t += crsim::exp_interval(rs, rate);
    if (t >= horizon_s) break;
    auto slot = static_cast<Slot>(t / slot_duration);
    if (slot >= horizon) break;
    out.push_back(slot);
  }
  return out;
}

// Slot-scan twins of the lookahead queries.
inline crsim::Lookahead time_to_idle(const std::vector<bool>& busy, Slot t) {
  if (!busy[t]) return {0, false};
  Slot u = t;
  while (u < busy.size() && busy[u]) ++u;
  if (u == busy.size()) return {u - t, true};  // still busy at the horizon edge
  return {u - t, false};
}

inline crsim::Lookahead vacant_time(const std::vector<bool>& busy, Slot t) {
  Slot u = t;
  while (u < busy.size() && !busy[u]) ++u;
  if (u == busy.size()) return {u - t, true};
  return {u - t, false};
}

// Candidate ranking by selection sort on (vacant time desc, index asc),
// excluding the pair's own channel and every busy channel.
inline std::vector<int> ranking(const std::vector<std::vector<bool>>& busy, Slot t,
                                std::optional<int> exclude) {
  std::vector<std::pair<int, Slot>> idle;
  for (int ch = 0; ch < static_cast<int>(busy.size()); ++ch) {
    if (exclude && *exclude == ch) continue;
    if (busy[static_cast<std::size_t>(ch)][t]) continue;
    idle.emplace_back(ch, vacant_time(busy[static_cast<std::size_t>(ch)], t).slots);
  }
  std::vector<int> out;
  while (!idle.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < idle.size(); ++i) {
      if (idle[i].second > idle[best].second ||
          (idle[i].second == idle[best].second && idle[i].first < idle[best].first)) {
        best = i;
      }
    }
    out.push_back(idle[best].first);
    idle.erase(idle.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

inline double mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

}  // namespace oracle
