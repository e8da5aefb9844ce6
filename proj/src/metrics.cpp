#include "crsim/metrics.hpp"

namespace crsim {

std::uint64_t RunMetrics::delivered_bits() const {
  std::uint64_t total = 0;
  for (const auto& p : pairs) total += p.delivered_bits;
  return total;
}

std::uint64_t RunMetrics::completed_packets() const {
  std::uint64_t total = 0;
  for (const auto& p : pairs) total += p.completed_packets;
  return total;
}

double throughput_bps(const RunMetrics& m) {
  double seconds = static_cast<double>(m.horizon) * m.config.slot_duration;
  if (seconds <= 0 || m.pairs.empty()) return 0.0;
  return static_cast<double>(m.delivered_bits()) / seconds /
         static_cast<double>(m.pairs.size());
}

std::optional<double> avg_service_time_s(const RunMetrics& m) {
  std::uint64_t packets = 0;
  std::uint64_t slots = 0;
  for (const auto& p : m.pairs) {
    packets += p.service_slots.size();
    for (Slot s : p.service_slots) slots += s;
  }
  if (packets == 0) return std::nullopt;
  return static_cast<double>(slots) / static_cast<double>(packets) * m.config.slot_duration;
}

}  // namespace crsim
