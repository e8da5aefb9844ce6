#include "crsim/mac.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace crsim {

std::vector<int> generate_prs(std::uint64_t seed, std::uint64_t frame, int num_pairs) {
  if (num_pairs < 1) throw std::invalid_argument("generate_prs: need at least one pair");
  std::vector<int> prs(static_cast<std::size_t>(num_pairs));
  std::iota(prs.begin(), prs.end(), 0);
  RandomStream rs = derive_stream(seed, "prs", frame);
  shuffle_vector(prs, rs);
  return prs;
}

std::optional<int> rendezvous_channel(std::span<const int> ranking,
                                      const std::vector<bool>& su_occupied) {
  for (int ch : ranking) {
    if (ch < 0 || ch >= static_cast<int>(su_occupied.size())) {
      throw std::out_of_range("rendezvous_channel: channel outside the occupancy map");
    }
    if (!su_occupied[static_cast<std::size_t>(ch)]) return ch;
  }
  return std::nullopt;
}

std::vector<std::optional<int>> claim_channels(std::span<const int> prs,
                                               const std::vector<bool>& eligible,
                                               const std::vector<std::vector<int>>& preference,
                                               std::vector<bool>& claimed) {
  std::vector<std::optional<int>> out(eligible.size());
  for (int pid : prs) {
    auto idx = static_cast<std::size_t>(pid);
    if (pid < 0 || idx >= eligible.size()) {
      throw std::out_of_range("claim_channels: pair outside the eligibility map");
    }
    if (!eligible[idx]) continue;
    for (int ch : preference[idx]) {
      if (!claimed.at(static_cast<std::size_t>(ch))) {
        claimed[static_cast<std::size_t>(ch)] = true;
        out[idx] = ch;
        break;
      }
    }
  }
  return out;
}

Simulator::Simulator(const SimConfig& cfg, bool collect_trace)
    : cfg_(validate_config(cfg)),
      layout_(frame_layout(cfg_)),
      schedule_(generate_pu_schedules(cfg_)),
      arrivals_(generate_all_su_arrivals(cfg_)),
      history_(cfg_.num_channels, cfg_.prob_window),
      trace_(collect_trace) {
  init_pairs();
}

Simulator::Simulator(const SimConfig& cfg, PuSchedule schedule, std::vector<SuArrivals> arrivals,
                     bool collect_trace)
    : cfg_(validate_config(cfg)),
      layout_(frame_layout(cfg_)),
      schedule_(std::move(schedule)),
      arrivals_(std::move(arrivals)),
      history_(cfg_.num_channels, cfg_.prob_window),
      trace_(collect_trace) {
  if (schedule_.num_channels() != cfg_.num_channels) {
    throw std::invalid_argument("Simulator: schedule covers a different channel count");
  }
  if (schedule_.horizon() != cfg_.horizon) {
    throw std::invalid_argument("Simulator: schedule horizon differs from the config");
  }
  if (arrivals_.size() != static_cast<std::size_t>(cfg_.num_pairs)) {
    throw std::invalid_argument("Simulator: arrival lists cover a different pair count");
  }
  for (const auto& a : arrivals_) {
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
      if (a.slots[i] >= cfg_.horizon || (i > 0 && a.slots[i] < a.slots[i - 1])) {
        throw std::invalid_argument("Simulator: arrival slots must be sorted and inside the horizon");
      }
    }
    if (!a.slots.empty() &&
        (cfg_.su_packet_bits == 0 || cfg_.su_packet_bits % cfg_.bits_per_slot() != 0)) {
      throw std::invalid_argument("Simulator: injected arrivals need slot-aligned su_packet_bits");
    }
  }
  init_pairs();
}

void Simulator::init_pairs() {
  auto k = static_cast<std::size_t>(cfg_.num_pairs);
  pairs_.resize(k);
  baseline_streams_.reserve(k);
  pair_histories_.assign(k, IdleHistory(cfg_.num_channels, cfg_.prob_window));
  scan_cursor_.assign(k, 0);
  contact_epoch_.assign(k, 1);
  tuned_channel_.assign(k, std::nullopt);
  obs_epoch_.assign(k, std::vector<std::uint64_t>(static_cast<std::size_t>(cfg_.num_channels), 0));
  for (std::size_t i = 0; i < k; ++i) {
    pairs_[i].id = static_cast<int>(i);
    baseline_streams_.push_back(derive_stream(cfg_.seed, "baseline", i));
    // Stagger the scan start so idle radios do not probe in lockstep.
    scan_cursor_[i] = static_cast<int>(i) % cfg_.num_channels;
  }
  metrics_.config = cfg_;
  metrics_.horizon = cfg_.horizon;
  metrics_.pairs.resize(k);
  pu_cursor_.assign(static_cast<std::size_t>(cfg_.num_channels), 0);
  attempt_count_.assign(static_cast<std::size_t>(cfg_.num_channels), 0);
  attempt_pair_.assign(static_cast<std::size_t>(cfg_.num_channels), -1);
}

std::uint64_t Simulator::num_frames() const {
  return (cfg_.horizon + layout_.frame_length - 1) / layout_.frame_length;
}

void Simulator::ingest_arrivals(Slot t) {
  for (auto& p : pairs_) {
    const auto& slots = arrivals_[static_cast<std::size_t>(p.id)].slots;
    while (p.arrival_cursor < slots.size() && slots[p.arrival_cursor] <= t) {
      p.queue.push_back(slots[p.arrival_cursor]);
      arrived_bits_ += cfg_.su_packet_bits;
      queued_bits_ += cfg_.su_packet_bits;
      ++p.arrival_cursor;
    }
  }
}

void Simulator::mark_pu_edges(Slot t) {
  if (!trace_.enabled()) return;
  for (int ch = 0; ch < cfg_.num_channels; ++ch) {
    auto& cur = pu_cursor_[static_cast<std::size_t>(ch)];
    const auto& busy = schedule_.channel(ch).busy;
    if (cur >= busy.size()) continue;
    if (busy[cur].start == t) trace_.pu_on(t, ch);
    if (busy[cur].end == t) {
      trace_.pu_off(t, ch);
      ++cur;
    }
  }
}

void Simulator::pair_sense(std::size_t i, int channel, bool idle) {
  // A measurement backs the estimate only while the contact that
  // produced it lasts; on a fresh contact the stale record is dropped.
  auto c = static_cast<std::size_t>(channel);
  if (obs_epoch_[i][c] != contact_epoch_[i]) {
    pair_histories_[i].forget(channel);
    obs_epoch_[i][c] = contact_epoch_[i];
  }
  pair_histories_[i].observe(channel, idle);
}

void Simulator::observe_history(Slot t, bool data_slot) {
  if (cfg_.protocol != Protocol::probability) return;
  // The pooled history backs the common rendezvous convention. Each
  // pair's own estimates come from its single radio: tuned pairs hear
  // their channel's fate, and channel-less pairs probe one channel per
  // data slot (any energy, primary or secondary, reads as busy).
  for (int ch = 0; ch < cfg_.num_channels; ++ch) {
    history_.observe(ch, !schedule_.is_pu_busy(ch, t));
  }
  for (const auto& p : pairs_) {
    auto i = static_cast<std::size_t>(p.id);
    if (tuned_channel_[i] != p.channel) {
      ++contact_epoch_[i];
      tuned_channel_[i] = p.channel;
    }
    if (!data_slot) continue;  // the radio sits on the rendezvous channel
    if (p.channel) {
      pair_sense(i, *p.channel, !schedule_.is_pu_busy(*p.channel, t));
    } else if (t % layout_.frame_length == 1) {
      // One probe per frame: enough to steer the next nomination
      // without turning the scan into a second oracle.
      int ch = scan_cursor_[i];
      scan_cursor_[i] = (ch + 1) % cfg_.num_channels;
      bool busy = schedule_.is_pu_busy(ch, t) ||
                  attempt_count_[static_cast<std::size_t>(ch)] > 0;
      pair_sense(i, ch, !busy);
    }
  }
}

void Simulator::check_conservation() {
  if (arrived_bits_ != queued_bits_ + inflight_bits_ + delivered_bits_) {
    ++metrics_.conservation_violations;
  }
}

void Simulator::authorize(SuPairState& p, Slot from) {
  p.flags.fds = true;
  p.retune_until = std::max(p.retune_until, from);
  p.pause_logged = false;
}

std::vector<int> Simulator::protocol_ranking(const Prediction* pred, std::uint64_t frame) {
  switch (cfg_.protocol) {
    case Protocol::gcs_srv:
      return build_ranking(*pred, std::nullopt).lsc;
    case Protocol::random_select: {
      RandomStream rs = derive_stream(cfg_.seed, "rdv", frame);
      return random_ranking(cfg_.num_channels, std::nullopt, rs);
    }
    case Protocol::probability: {
      RandomStream rs = derive_stream(cfg_.seed, "rdv", frame);
      return probability_ranking(history_, std::nullopt, rs);
    }
  }
  throw std::logic_error("protocol_ranking: unknown protocol");
}

void Simulator::apply_claim(SuPairState& p, int channel, bool is_handoff, Slot s) {
  trace_.rts(s, p.id, 2 * p.id, channel);
  trace_.cts(s, p.id, 2 * p.id + 1, channel);
  if (is_handoff) {
    int from = p.channel ? *p.channel : *p.last_channel;
    trace_.handoff(s, p.id, from, channel);
    ++metrics_.pairs[static_cast<std::size_t>(p.id)].handoffs;
    ++metrics_.handoffs;
  } else {
    trace_.assign(s, p.id, channel);
  }
  trace_.broadcast(s, p.id);
  if (p.channel) p.last_channel = p.channel;
  p.channel = channel;
  p.flags.fcs = false;
  authorize(p, s + std::max<Slot>(cfg_.handoff_delay, 1));
}

const ControlPhaseState& Simulator::run_control_phase(std::uint64_t frame) {
  if (frame != next_frame_ || frame_open_) {
    throw std::logic_error("run_control_phase: frames must be processed in order");
  }
  if (frame >= num_frames()) throw std::out_of_range("run_control_phase: frame beyond horizon");

  const Slot s = layout_.control_slot_of(frame);
  const int num_ch = cfg_.num_channels;
  const auto num_pairs = static_cast<std::size_t>(cfg_.num_pairs);
  const bool gcs = cfg_.protocol == Protocol::gcs_srv;
  const Slot span_end = std::min(s + layout_.data_slots, cfg_.horizon - 1);

  mark_pu_edges(s);
  trace_.frame(s, frame);
  ingest_arrivals(s);

  // Head-of-queue packets enter service; this control slot is where they
  // first contend.
  for (auto& p : pairs_) {
    if (!p.in_flight && !p.queue.empty()) {
      p.in_flight = Packet{p.queue.front(), s, cfg_.su_packet_bits};
      p.queue.pop_front();
      queued_bits_ -= cfg_.su_packet_bits;
      inflight_bits_ += cfg_.su_packet_bits;
      p.flags.fdt = true;
    }
  }

  std::optional<Prediction> pred;
  if (gcs) pred = predict(schedule_, std::nullopt, s);

  // Channel holders either continue (and may ride out a PU pause) or
  // raise FCS to switch. Baselines never look ahead: they just continue.
  std::vector<std::vector<int>> preference(num_pairs);
  for (auto& p : pairs_) {
    if (!p.channel || !p.in_flight) continue;
    if (!gcs) {
      authorize(p, s + 1);
      continue;
    }
    int ch = *p.channel;
    std::optional<Slot> onset;  // first PU-busy slot on ch before the next control slot
    if (s + 1 <= span_end) {
      if (schedule_.is_pu_busy(ch, s + 1)) {
        onset = s + 1;
      } else {
        Lookahead gap = schedule_.vacant_time(ch, s + 1);
        if (!gap.censored && s + 1 + gap.slots <= span_end) onset = s + 1 + gap.slots;
      }
    }
    if (!onset) {
      p.flags.fcs = false;
      authorize(p, s + 1);
      continue;
    }
    Slot stay_slots = schedule_.time_to_idle(ch, *onset).slots;
    ChannelRanking ranking = build_ranking(*pred, ch);
    bool switching = decide_handoff(stay_slots, ranking, cfg_.handoff_delay);
    trace_.decision(s, p.id, ch, stay_slots, switching, schedule_.busy_period_start(ch, *onset));
    p.flags.fcs = switching;
    if (switching) {
      // Transmission stops pending coordination; only a successful claim
      // re-authorizes the pair this frame.
      p.flags.fds = false;
      preference[static_cast<std::size_t>(p.id)] = std::move(ranking.lsc);
    } else {
      authorize(p, s + 1);
    }
  }

  phase_ = ControlPhaseState{};
  phase_.frame = frame;
  phase_.prs = generate_prs(cfg_.seed, frame, cfg_.num_pairs);
  phase_.assignments.assign(num_pairs, std::nullopt);
  phase_.claimed.assign(static_cast<std::size_t>(num_ch), false);

  std::vector<bool> occupied(static_cast<std::size_t>(num_ch), false);
  for (const auto& p : pairs_) {
    if (p.channel) occupied[static_cast<std::size_t>(*p.channel)] = true;
  }

  // Part one: pairs that must move (FCS raised). Part two: pairs with a
  // packet but no channel yet.
  std::vector<bool> part1(num_pairs, false);
  std::vector<bool> part2(num_pairs, false);
  bool contenders = false;
  for (const auto& p : pairs_) {
    if (!p.in_flight) continue;
    if (p.flags.fcs) {
      part1[static_cast<std::size_t>(p.id)] = true;
      contenders = true;
    } else if (!p.channel) {
      part2[static_cast<std::size_t>(p.id)] = true;
      contenders = true;
    }
  }

  if (contenders) {
    phase_.coordinated = true;
    std::vector<int> global_ranking = protocol_ranking(pred ? &*pred : nullptr, frame);
    phase_.rendezvous = rendezvous_channel(global_ranking, occupied);
    if (phase_.rendezvous) {
      trace_.rdv(s, *phase_.rendezvous);
      phase_.claimed = occupied;

      for (std::size_t i = 0; i < num_pairs; ++i) {
        if (!part1[i] && !part2[i]) continue;
        auto& p = pairs_[i];
        if (gcs) {
          // Handoff pairs carry the LSC from their decision; fresh pairs
          // share the global ranking.
          if (part2[i]) preference[i] = global_ranking;
        } else {
          // A reactive pair nominates exactly one channel per control
          // phase; when somebody else claims it first, the pair waits.
          // Probability pairs rank by their own sensing history.
          std::optional<int> exclude;
          if (part1[i]) exclude = p.channel ? p.channel : p.last_channel;
          preference[i] = {cfg_.protocol == Protocol::random_select
                               ? random_select(num_ch, exclude, baseline_streams_[i])
                               : prob_select(pair_histories_[i], exclude,
                                             baseline_streams_[i])};
        }
      }

      auto handoff_claims = claim_channels(phase_.prs, part1, preference, phase_.claimed);
      for (int pid : phase_.prs) {
        auto i = static_cast<std::size_t>(pid);
        if (!part1[i]) continue;
        phase_.handoff_pairs.push_back(pid);
        if (handoff_claims[i]) {
          phase_.assignments[i] = handoff_claims[i];
          apply_claim(pairs_[i], *handoff_claims[i], true, s);
        } else if (pairs_[i].channel) {
          // No free channel to move to: ride out the PU where we are,
          // using whatever idle slots remain, and retry next control.
          authorize(pairs_[i], s + 1);
        }
      }

      auto fresh_claims = claim_channels(phase_.prs, part2, preference, phase_.claimed);
      for (int pid : phase_.prs) {
        auto i = static_cast<std::size_t>(pid);
        if (!part2[i]) continue;
        phase_.fresh_pairs.push_back(pid);
        if (fresh_claims[i]) {
          phase_.assignments[i] = fresh_claims[i];
          apply_claim(pairs_[i], *fresh_claims[i], false, s);
        }
      }
    } else {
      for (int pid : phase_.prs) {
        auto i = static_cast<std::size_t>(pid);
        if (part1[i]) {
          phase_.handoff_pairs.push_back(pid);
          // Coordination skipped entirely: holders ride out the PU in place.
          if (pairs_[i].channel) authorize(pairs_[i], s + 1);
        }
        if (part2[i]) phase_.fresh_pairs.push_back(pid);
      }
    }
  }

  observe_history(s, false);
  check_conservation();
  frame_open_ = true;
  return phase_;
}

void Simulator::process_data_slot(Slot t) {
  mark_pu_edges(t);
  ingest_arrivals(t);
  const bool gcs = cfg_.protocol == Protocol::gcs_srv;
  const std::uint64_t bits_per_slot = cfg_.bits_per_slot();

  std::fill(attempt_count_.begin(), attempt_count_.end(), 0);
  for (auto& p : pairs_) {
    if (!p.flags.fds || !p.in_flight || !p.channel || t < p.retune_until) continue;
    int ch = *p.channel;
    if (gcs) {
      // Proactive pairs respect the oracle: no transmission while the PU
      // holds the channel.
      if (schedule_.is_pu_busy(ch, t)) {
        if (!p.pause_logged) {
          trace_.pause(t, p.id, ch);
          p.pause_logged = true;
        }
        p.flags.fcs = true;
        continue;
      }
      p.pause_logged = false;
    }
    ++attempt_count_[static_cast<std::size_t>(ch)];
    attempt_pair_[static_cast<std::size_t>(ch)] = p.id;
  }

  for (int ch = 0; ch < cfg_.num_channels; ++ch) {
    auto c = static_cast<std::size_t>(ch);
    if (attempt_count_[c] == 0) continue;
    if (attempt_count_[c] > 1) {
      // Should be unreachable while claiming stays injective; detected
      // rather than assumed so the counters mean something.
      ++metrics_.su_su_collision_slots;
      for (auto& p : pairs_) {
        if (p.channel && *p.channel == ch && p.flags.fds && p.in_flight && t >= p.retune_until) {
          trace_.collision(t, p.id, ch, false);
        }
      }
      continue;
    }
    auto& p = pairs_[static_cast<std::size_t>(attempt_pair_[c])];
    if (schedule_.is_pu_busy(ch, t)) {
      // Only reactive pairs land here: the slot is lost to the PU and
      // the pair backs off to re-contend.
      ++metrics_.pu_su_collision_slots;
      ++metrics_.pairs[static_cast<std::size_t>(p.id)].pu_su_collision_slots;
      trace_.collision(t, p.id, ch, true);
      handle_pu_collision(p);
      continue;
    }
    std::uint64_t bits = std::min(bits_per_slot, p.in_flight->remaining_bits);
    p.in_flight->remaining_bits -= bits;
    inflight_bits_ -= bits;
    delivered_bits_ += bits;
    metrics_.pairs[static_cast<std::size_t>(p.id)].delivered_bits += bits;
    if (p.in_flight->remaining_bits == 0) {
      Slot service = t - p.in_flight->first_contention + 1;
      auto& pm = metrics_.pairs[static_cast<std::size_t>(p.id)];
      ++pm.completed_packets;
      pm.service_slots.push_back(service);
      trace_.complete(t, p.id, p.in_flight->arrival, service);
      if (!p.queue.empty()) {
        // FDT stays raised while the queue is non-empty: the next packet
        // enters service on the held channel without re-contending.
        p.in_flight = Packet{p.queue.front(), t + 1, cfg_.su_packet_bits};
        p.queue.pop_front();
        queued_bits_ -= cfg_.su_packet_bits;
        inflight_bits_ += cfg_.su_packet_bits;
      } else {
        p.in_flight.reset();
        p.flags = SuFlags{};
        p.last_channel = p.channel;
        p.channel.reset();
        p.pause_logged = false;
      }
    }
  }

  observe_history(t, true);
  check_conservation();
}

void Simulator::run_data_phase(std::uint64_t frame) {
  if (frame != next_frame_ || !frame_open_) {
    throw std::logic_error("run_data_phase: control phase must run first");
  }
  const Slot s = layout_.control_slot_of(frame);
  const Slot span_end = std::min(s + layout_.data_slots, cfg_.horizon - 1);
  for (Slot t = s + 1; t <= span_end; ++t) process_data_slot(t);
  frame_open_ = false;
  ++next_frame_;
}

void Simulator::run() {
  while (next_frame_ < num_frames()) {
    std::uint64_t frame = next_frame_;
    run_control_phase(frame);
    run_data_phase(frame);
  }
}

SimResult run_simulation(const SimConfig& cfg, bool collect_trace) {
  Simulator sim(cfg, collect_trace);
  sim.run();
  return {sim.metrics(), sim.take_trace()};
}

SimResult run_simulation(const SimConfig& cfg, PuSchedule schedule,
                         std::vector<SuArrivals> arrivals, bool collect_trace) {
  Simulator sim(cfg, std::move(schedule), std::move(arrivals), collect_trace);
  sim.run();
  return {sim.metrics(), sim.take_trace()};
}

}  // namespace crsim
