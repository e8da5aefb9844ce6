#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "crsim/config.hpp"
#include "crsim/rng.hpp"

namespace crsim {

// Inclusive slot range during which a channel's primary user transmits.
struct BusyInterval {
  Slot start = 0;
  Slot end = 0;
};

// Sorted, disjoint, non-adjacent busy intervals of one channel. Intervals
// may extend past the horizon; queries clamp there.
struct ChannelSchedule {
  std::vector<BusyInterval> busy;
};

// A lookahead measured in slots, flagged when the true value was cut off
// at the horizon.
struct Lookahead {
  Slot slots = 0;
  bool censored = false;

  friend bool operator==(const Lookahead&, const Lookahead&) = default;
};

class PuSchedule {
 public:
  PuSchedule() = default;
  PuSchedule(std::vector<ChannelSchedule> channels, Slot horizon);

  int num_channels() const { return static_cast<int>(channels_.size()); }
  Slot horizon() const { return horizon_; }
  const ChannelSchedule& channel(int ch) const;

  // All three take a channel index and a slot t in [0, horizon).
  bool is_pu_busy(int ch, Slot t) const;
  // Slots until the channel next turns idle; 0 when already idle.
  Lookahead time_to_idle(int ch, Slot t) const;
  // Length of the idle stretch starting at t; requires the channel idle at t.
  Lookahead vacant_time(int ch, Slot t) const;
  // Start of the busy period covering t; requires the channel busy at t.
  Slot busy_period_start(int ch, Slot t) const;

  // Fraction of [0, horizon) slots covered by busy intervals.
  double busy_fraction(int ch) const;

 private:
  const BusyInterval* interval_at(int ch, Slot t) const;
  void check_slot(Slot t) const;

  std::vector<ChannelSchedule> channels_;
  Slot horizon_ = 0;
};

// M/D/1 primary-user activity: Poisson packet arrivals at lambda_p, each
// holding the channel for pu_packet_slots; queued packets extend the busy
// period back-to-back. Logs a warning to stderr when the offered load
// reaches 1 (the busy period then never drains).
ChannelSchedule generate_pu_schedule(const SimConfig& cfg, int channel, RandomStream& stream);
PuSchedule generate_pu_schedules(const SimConfig& cfg);

struct SuArrivals {
  std::vector<Slot> slots;  // non-decreasing packet arrival slots, all < horizon
};

SuArrivals generate_su_arrivals(const SimConfig& cfg, int pair, RandomStream& stream);
std::vector<SuArrivals> generate_all_su_arrivals(const SimConfig& cfg);

// Everything the channel-selection policy may know at slot t: remaining
// busy time per channel and, for idle channels, the vacant stretch ahead.
struct Prediction {
  Slot at = 0;
  std::optional<int> current;                    // channel the pair holds, if any
  std::optional<Lookahead> stay;                 // time_to_idle on `current`
  std::vector<Lookahead> until_idle;             // per channel
  std::vector<std::optional<Lookahead>> vacant;  // set exactly where until_idle is 0
};

Prediction predict(const PuSchedule& sched, std::optional<int> current, Slot t);

// Schedule fixtures: CSV with header channel,start_slot,end_slot and
// 1-based channel ids. Loading validates ordering and disjointness.
void dump_schedule_csv(const PuSchedule& sched, std::ostream& out);
PuSchedule load_schedule_csv(std::istream& in, int num_channels, Slot horizon);

}  // namespace crsim
