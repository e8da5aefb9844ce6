#include "crsim/traffic.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace crsim {

PuSchedule::PuSchedule(std::vector<ChannelSchedule> channels, Slot horizon)
    : channels_(std::move(channels)), horizon_(horizon) {
  if (horizon_ == 0) throw std::invalid_argument("PuSchedule: horizon must be positive");
  for (std::size_t ch = 0; ch < channels_.size(); ++ch) {
    const auto& busy = channels_[ch].busy;
    for (std::size_t i = 0; i < busy.size(); ++i) {
      if (busy[i].end < busy[i].start) {
        throw std::invalid_argument("PuSchedule: interval ends before it starts");
      }
      // Adjacency is merged at generation time; a gap of at least one
      // idle slot separates intervals.
      if (i > 0 && busy[i].start <= busy[i - 1].end + 1) {
        throw std::invalid_argument("PuSchedule: intervals overlap or touch on channel " +
                                    std::to_string(ch + 1));
      }
    }
  }
}

const ChannelSchedule& PuSchedule::channel(int ch) const {
  if (ch < 0 || ch >= num_channels()) throw std::out_of_range("PuSchedule: bad channel index");
  return channels_[static_cast<std::size_t>(ch)];
}

void PuSchedule::check_slot(Slot t) const {
  if (t >= horizon_) throw std::out_of_range("PuSchedule: slot beyond horizon");
}

const BusyInterval* PuSchedule::interval_at(int ch, Slot t) const {
  const auto& busy = channel(ch).busy;
  auto it = std::upper_bound(busy.begin(), busy.end(), t,
                             [](Slot v, const BusyInterval& b) { return v < b.start; });
  if (it == busy.begin()) return nullptr;
  --it;
  return t <= it->end ? &*it : nullptr;
}

bool PuSchedule::is_pu_busy(int ch, Slot t) const {
  check_slot(t);
  return interval_at(ch, t) != nullptr;
}

Lookahead PuSchedule::time_to_idle(int ch, Slot t) const {
  check_slot(t);
  const BusyInterval* b = interval_at(ch, t);
  if (b == nullptr) return {0, false};
  if (b->end >= horizon_) return {horizon_ - t, true};
  return {b->end - t + 1, false};
}

Lookahead PuSchedule::vacant_time(int ch, Slot t) const {
  check_slot(t);
  if (interval_at(ch, t) != nullptr) {
    throw std::logic_error("vacant_time: channel is busy at the queried slot");
  }
  const auto& busy = channel(ch).busy;
  auto it = std::upper_bound(busy.begin(), busy.end(), t,
                             [](Slot v, const BusyInterval& b) { return v < b.start; });
  if (it == busy.end() || it->start >= horizon_) return {horizon_ - t, true};
  return {it->start - t, false};
}

Slot PuSchedule::busy_period_start(int ch, Slot t) const {
  check_slot(t);
  const BusyInterval* b = interval_at(ch, t);
  if (b == nullptr) throw std::logic_error("busy_period_start: channel is idle at the queried slot");
  return b->start;
}

double PuSchedule::busy_fraction(int ch) const {
  std::uint64_t covered = 0;
  for (const auto& b : channel(ch).busy) {
    if (b.start >= horizon_) break;
    covered += std::min(b.end, horizon_ - 1) - b.start + 1;
  }
  return static_cast<double>(covered) / static_cast<double>(horizon_);
}

ChannelSchedule generate_pu_schedule(const SimConfig& cfg, int channel, RandomStream& stream) {
  ChannelSchedule out;
  Slot packet_slots = cfg.pu_packet_slots();
  if (cfg.lambda_p <= 0 || packet_slots == 0) return out;

  double load = cfg.lambda_p * static_cast<double>(cfg.pu_packet_bits) /
                static_cast<double>(cfg.bit_rate);
  if (load >= 1.0) {
    std::fprintf(stderr, "warning: PU load %.3f on channel %d saturates the channel\n", load,
                 channel + 1);
  }

  double horizon_s = static_cast<double>(cfg.horizon) * cfg.slot_duration;
  double t = 0.0;
  Slot server_free = 0;  // first slot the queue could start a new packet
  for (;;) {
    t += exp_interval(stream, cfg.lambda_p);
    if (t >= horizon_s) break;
    Slot arrival = static_cast<Slot>(t / cfg.slot_duration);
    if (arrival >= cfg.horizon) break;  // fp rounding right at the edge
    Slot start = std::max(arrival, server_free);
    Slot end = start + packet_slots - 1;
    server_free = end + 1;
    if (!out.busy.empty() && out.busy.back().end + 1 == start) {
      out.busy.back().end = end;  // queued packet extends the busy period
    } else {
      out.busy.push_back({start, end});
    }
  }
  return out;
}

PuSchedule generate_pu_schedules(const SimConfig& cfg) {
  std::vector<ChannelSchedule> channels;
  channels.reserve(static_cast<std::size_t>(cfg.num_channels));
  for (int ch = 0; ch < cfg.num_channels; ++ch) {
    RandomStream rs = derive_stream(cfg.seed, "pu", static_cast<std::uint64_t>(ch));
    channels.push_back(generate_pu_schedule(cfg, ch, rs));
  }
  return PuSchedule(std::move(channels), cfg.horizon);
}

SuArrivals generate_su_arrivals(const SimConfig& cfg, int pair, RandomStream& stream) {
  (void)pair;
  SuArrivals out;
  if (cfg.lambda_s <= 0) return out;
  double horizon_s = static_cast<double>(cfg.horizon) * cfg.slot_duration;
  double t = 0.0;
  for (;;) {
    t += exp_interval(stream, cfg.lambda_s);
    if (t >= horizon_s) break;
    Slot arrival = static_cast<Slot>(t / cfg.slot_duration);
    if (arrival >= cfg.horizon) break;
    out.slots.push_back(arrival);
  }
  return out;
}

std::vector<SuArrivals> generate_all_su_arrivals(const SimConfig& cfg) {
  std::vector<SuArrivals> out;
  out.reserve(static_cast<std::size_t>(cfg.num_pairs));
  for (int p = 0; p < cfg.num_pairs; ++p) {
    RandomStream rs = derive_stream(cfg.seed, "su", static_cast<std::uint64_t>(p));
    out.push_back(generate_su_arrivals(cfg, p, rs));
  }
  return out;
}

Prediction predict(const PuSchedule& sched, std::optional<int> current, Slot t) {
  Prediction pred;
  pred.at = t;
  pred.current = current;
  int m = sched.num_channels();
  pred.until_idle.reserve(static_cast<std::size_t>(m));
  pred.vacant.resize(static_cast<std::size_t>(m));
  for (int ch = 0; ch < m; ++ch) {
    Lookahead li = sched.time_to_idle(ch, t);
    pred.until_idle.push_back(li);
    if (li.slots == 0) pred.vacant[static_cast<std::size_t>(ch)] = sched.vacant_time(ch, t);
  }
  if (current) {
    if (*current < 0 || *current >= m) throw std::out_of_range("predict: bad current channel");
    pred.stay = pred.until_idle[static_cast<std::size_t>(*current)];
  }
  return pred;
}

void dump_schedule_csv(const PuSchedule& sched, std::ostream& out) {
  out << "channel,start_slot,end_slot\n";
  for (int ch = 0; ch < sched.num_channels(); ++ch) {
    for (const auto& b : sched.channel(ch).busy) {
      out << (ch + 1) << ',' << b.start << ',' << b.end << '\n';
    }
  }
}

PuSchedule load_schedule_csv(std::istream& in, int num_channels, Slot horizon) {
  if (num_channels < 1) throw std::invalid_argument("load_schedule_csv: need at least one channel");
  std::string line;
  if (!std::getline(in, line) || line.find("channel") == std::string::npos) {
    throw std::invalid_argument("load_schedule_csv: missing header line");
  }
  std::vector<ChannelSchedule> channels(static_cast<std::size_t>(num_channels));
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string ch_s, start_s, end_s;
    if (!std::getline(ss, ch_s, ',') || !std::getline(ss, start_s, ',') ||
        !std::getline(ss, end_s)) {
      throw std::invalid_argument("load_schedule_csv: line " + std::to_string(lineno) +
                                  ": expected channel,start_slot,end_slot");
    }
    int ch = std::stoi(ch_s);
    if (ch < 1 || ch > num_channels) {
      throw std::invalid_argument("load_schedule_csv: line " + std::to_string(lineno) +
                                  ": channel id out of range");
    }
    channels[static_cast<std::size_t>(ch - 1)].busy.push_back(
        {std::stoull(start_s), std::stoull(end_s)});
  }
  // The constructor re-validates ordering and disjointness.
  return PuSchedule(std::move(channels), horizon);
}

}  // namespace crsim
