#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crsim/config.hpp"

namespace crsim {

struct PairMetrics {
  std::uint64_t delivered_bits = 0;
  std::uint64_t completed_packets = 0;
  std::vector<Slot> service_slots;  // one entry per completed packet
  std::uint64_t handoffs = 0;
  std::uint64_t pu_su_collision_slots = 0;
};

struct RunMetrics {
  SimConfig config;
  Slot horizon = 0;
  std::vector<PairMetrics> pairs;
  std::uint64_t pu_su_collision_slots = 0;
  std::uint64_t su_su_collision_slots = 0;
  std::uint64_t handoffs = 0;
  std::uint64_t conservation_violations = 0;

  std::uint64_t delivered_bits() const;
  std::uint64_t completed_packets() const;
};

// Network throughput per pair: delivered bits over wall-clock simulated
// time, divided by the number of pairs.
double throughput_bps(const RunMetrics& m);

// Mean packet service time in seconds, from the slot a packet first
// contended to the slot its last bit left (inclusive). Empty when no
// packet completed.
std::optional<double> avg_service_time_s(const RunMetrics& m);

}  // namespace crsim
