#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crsim/baselines.hpp"
#include "crsim/config.hpp"
#include "crsim/gcs.hpp"
#include "crsim/metrics.hpp"
#include "crsim/su_pair.hpp"
#include "crsim/trace.hpp"
#include "crsim/traffic.hpp"

namespace crsim {

// Pseudo-random sequence ordering the pairs' mini-slot claims in the
// given frame's control phase; a permutation of 0..num_pairs-1 that every
// node derives identically.
std::vector<int> generate_prs(std::uint64_t seed, std::uint64_t frame, int num_pairs);

// First channel of the ranking not occupied by an SU; empty when the
// whole ranking is occupied (coordination is skipped that frame).
std::optional<int> rendezvous_channel(std::span<const int> ranking,
                                      const std::vector<bool>& su_occupied);

// Distributed claiming: pairs marked eligible take, in PRS order, the
// first channel of their preference list not yet claimed. `claimed`
// arrives seeded with the channels already unavailable and is updated as
// claims land. Returns the per-pair assignment.
std::vector<std::optional<int>> claim_channels(std::span<const int> prs,
                                               const std::vector<bool>& eligible,
                                               const std::vector<std::vector<int>>& preference,
                                               std::vector<bool>& claimed);

// What one control phase decided, kept for inspection.
struct ControlPhaseState {
  std::uint64_t frame = 0;
  std::vector<int> prs;
  std::optional<int> rendezvous;
  bool coordinated = false;                       // any pair contended
  std::vector<int> handoff_pairs;                 // part one, PRS order
  std::vector<int> fresh_pairs;                   // part two, PRS order
  std::vector<std::optional<int>> assignments;    // per pair, this phase only
  std::vector<bool> claimed;                      // per channel, after claiming
};

struct SimResult {
  RunMetrics metrics;
  EventTrace trace;
};

class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg, bool collect_trace = true);
  Simulator(const SimConfig& cfg, PuSchedule schedule, std::vector<SuArrivals> arrivals,
            bool collect_trace = true);

  // Runs every remaining frame up to the horizon.
  void run();

  // Single-stepping for tests; frames must be processed in order.
  const ControlPhaseState& run_control_phase(std::uint64_t frame);
  void run_data_phase(std::uint64_t frame);
  std::uint64_t num_frames() const;

  const SimConfig& config() const { return cfg_; }
  const FrameLayout& layout() const { return layout_; }
  const PuSchedule& schedule() const { return schedule_; }
  const std::vector<SuArrivals>& arrivals() const { return arrivals_; }
  const std::vector<SuPairState>& pairs() const { return pairs_; }
  const RunMetrics& metrics() const { return metrics_; }
  const EventTrace& trace() const { return trace_; }
  EventTrace take_trace() { return std::move(trace_); }

 private:
  void init_pairs();
  void ingest_arrivals(Slot t);
  void mark_pu_edges(Slot t);
  void observe_history(Slot t, bool data_slot);
  void pair_sense(std::size_t i, int channel, bool idle);
  void check_conservation();
  void authorize(SuPairState& p, Slot from);
  std::vector<int> protocol_ranking(const Prediction* pred, std::uint64_t frame);
  void apply_claim(SuPairState& p, int channel, bool is_handoff, Slot s);
  void process_data_slot(Slot t);

  SimConfig cfg_;
  FrameLayout layout_;
  PuSchedule schedule_;
  std::vector<SuArrivals> arrivals_;
  std::vector<SuPairState> pairs_;
  std::vector<RandomStream> baseline_streams_;
  IdleHistory history_;
  std::vector<IdleHistory> pair_histories_;
  // Scan bookkeeping for per-pair sensing: which channel a hunting
  // radio probes next, and a contact epoch per (pair, channel) so that
  // measurements from an earlier contact are dropped as stale.
  std::vector<int> scan_cursor_;
  std::vector<std::uint64_t> contact_epoch_;
  std::vector<std::optional<int>> tuned_channel_;
  std::vector<std::vector<std::uint64_t>> obs_epoch_;
  EventTrace trace_;
  RunMetrics metrics_;
  ControlPhaseState phase_;
  std::uint64_t next_frame_ = 0;
  bool frame_open_ = false;  // control phase done, data phase pending

  // Conservation ledger, updated every slot.
  std::uint64_t arrived_bits_ = 0;
  std::uint64_t queued_bits_ = 0;
  std::uint64_t inflight_bits_ = 0;
  std::uint64_t delivered_bits_ = 0;

  std::vector<std::size_t> pu_cursor_;  // per channel, next interval to trace

  // Per-slot scratch, sized num_channels.
  std::vector<int> attempt_count_;
  std::vector<int> attempt_pair_;
};

SimResult run_simulation(const SimConfig& cfg, bool collect_trace = true);
SimResult run_simulation(const SimConfig& cfg, PuSchedule schedule,
                         std::vector<SuArrivals> arrivals, bool collect_trace = true);

}  // namespace crsim
