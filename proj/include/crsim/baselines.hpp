#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crsim/config.hpp"
#include "crsim/rng.hpp"
#include "crsim/su_pair.hpp"

namespace crsim {

// Sliding window of per-channel idle/busy observations feeding the
// probability baseline. Observations always lag the deciding slot, so
// estimates never peek at the present.
class IdleHistory {
 public:
  IdleHistory(int num_channels, Slot window);

  void observe(int channel, bool idle);
  // Drop everything recorded about one channel, restoring its prior.
  void forget(int channel);
  // Fraction of the last W observations that were idle; 0.5 before any
  // observation exists.
  double idle_probability(int channel) const;

  int num_channels() const { return static_cast<int>(counts_.size()); }
  Slot window() const { return window_; }
  std::uint64_t observations(int channel) const;

 private:
  struct ChannelWindow {
    std::vector<char> ring;
    std::size_t next = 0;
    std::uint64_t total = 0;  // lifetime observations
    std::uint64_t idle = 0;   // idle observations currently inside the window
  };

  Slot window_ = 0;
  std::vector<ChannelWindow> counts_;
};

// Uniform pick among all channels except the one just vacated.
int random_select(int num_channels, std::optional<int> exclude, RandomStream& rs);

// Highest lagged idle probability; random order among exact ties.
int prob_select(const IdleHistory& history, std::optional<int> exclude, RandomStream& rs);

// Full preference orders, used to pick the rendezvous channel: walk the
// list until a channel free of secondary users turns up.
std::vector<int> random_ranking(int num_channels, std::optional<int> exclude, RandomStream& rs);
std::vector<int> probability_ranking(const IdleHistory& history, std::optional<int> exclude,
                                     RandomStream& rs);

// Reactive response to hitting a returning PU: stop transmitting, drop
// the channel (it frees at the next control boundary), and raise FCS so
// the pair re-contends with handoff priority.
void handle_pu_collision(SuPairState& pair);

}  // namespace crsim
