#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "crsim/traffic.hpp"

namespace crsim {

enum class HandoffAction { stay, switch_channel };

struct StayOrSwitch {
  Slot service_time = 0;  // slots the pending transmission would wait
  HandoffAction action = HandoffAction::stay;
};

// Greedy stay-or-switch rule for one candidate: staying costs the PU's
// remaining busy time S_k, switching costs the candidate's time-to-idle
// C_j plus the handoff delay. Ties favor staying.
StayOrSwitch stay_or_switch(Slot stay_slots, Slot candidate_until_idle, Slot handoff_delay);

// Orders idle channels by decreasing vacant time, breaking ties toward
// the lower channel index. Input pairs are (channel, vacant slots).
std::vector<int> rank_vacant(std::vector<std::pair<int, Slot>> vacant_by_channel);

// LSC: switch candidates, best first. LNC: the zero-changing-time
// channels feeding it, in ascending index order.
struct ChannelRanking {
  std::vector<int> lsc;
  std::vector<int> lnc;
};

// Builds the candidate ranking from a prediction, excluding `exclude`
// (the pair's own channel, when it has one). Only channels that are idle
// at the prediction instant qualify; busy channels never enter the list.
ChannelRanking build_ranking(const Prediction& pred, std::optional<int> exclude);

// FCS decision for a pair facing a PU on its channel: switch iff some
// candidate beats waiting out the busy period. With zero-changing-time
// candidates this reduces to S_k > t_h.
bool decide_handoff(Slot stay_slots, const ChannelRanking& ranking, Slot handoff_delay);

}  // namespace crsim
