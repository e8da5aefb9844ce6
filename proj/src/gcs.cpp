#include "crsim/gcs.hpp"

#include <algorithm>

namespace crsim {

StayOrSwitch stay_or_switch(Slot stay_slots, Slot candidate_until_idle, Slot handoff_delay) {
  // ST = min(S_k, C_j + t_h); the boundary case keeps the pair where it is.
  Slot switch_cost = candidate_until_idle + handoff_delay;
  if (stay_slots <= switch_cost) return {stay_slots, HandoffAction::stay};
  return {switch_cost, HandoffAction::switch_channel};
}

std::vector<int> rank_vacant(std::vector<std::pair<int, Slot>> vacant_by_channel) {
  std::sort(vacant_by_channel.begin(), vacant_by_channel.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  std::vector<int> out;
  out.reserve(vacant_by_channel.size());
  for (const auto& [ch, vt] : vacant_by_channel) out.push_back(ch);
  return out;
}

ChannelRanking build_ranking(const Prediction& pred, std::optional<int> exclude) {
  ChannelRanking ranking;
  std::vector<std::pair<int, Slot>> vacant;
  for (int ch = 0; ch < static_cast<int>(pred.until_idle.size()); ++ch) {
    if (exclude && *exclude == ch) continue;
    if (pred.until_idle[static_cast<std::size_t>(ch)].slots != 0) continue;
    const auto& vt = pred.vacant[static_cast<std::size_t>(ch)];
    ranking.lnc.push_back(ch);
    vacant.emplace_back(ch, vt ? vt->slots : 0);
  }
  ranking.lsc = rank_vacant(std::move(vacant));
  return ranking;
}

bool decide_handoff(Slot stay_slots, const ChannelRanking& ranking, Slot handoff_delay) {
  if (ranking.lsc.empty()) return false;
  // Candidates in the list are idle now, so switching costs exactly t_h.
  return stay_or_switch(stay_slots, 0, handoff_delay).action == HandoffAction::switch_channel;
}

}  // namespace crsim
