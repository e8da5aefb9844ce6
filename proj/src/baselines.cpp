#include "crsim/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace crsim {

IdleHistory::IdleHistory(int num_channels, Slot window) : window_(window) {
  if (num_channels < 1) throw std::invalid_argument("IdleHistory: need at least one channel");
  if (window < 1) throw std::invalid_argument("IdleHistory: window must be positive");
  counts_.resize(static_cast<std::size_t>(num_channels));
  for (auto& w : counts_) w.ring.assign(static_cast<std::size_t>(window), 0);
}

void IdleHistory::observe(int channel, bool idle) {
  auto& w = counts_.at(static_cast<std::size_t>(channel));
  if (w.total >= window_) w.idle -= static_cast<std::uint64_t>(w.ring[w.next]);
  w.ring[w.next] = idle ? 1 : 0;
  w.idle += idle ? 1 : 0;
  w.next = (w.next + 1) % w.ring.size();
  ++w.total;
}

void IdleHistory::forget(int channel) {
  auto& w = counts_.at(static_cast<std::size_t>(channel));
  std::fill(w.ring.begin(), w.ring.end(), 0);
  w.next = 0;
  w.idle = 0;
  w.total = 0;
}

double IdleHistory::idle_probability(int channel) const {
  const auto& w = counts_.at(static_cast<std::size_t>(channel));
  std::uint64_t seen = std::min<std::uint64_t>(w.total, window_);
  if (seen == 0) return 0.5;  // uninformed prior before any observation
  return static_cast<double>(w.idle) / static_cast<double>(seen);
}

std::uint64_t IdleHistory::observations(int channel) const {
  const auto& w = counts_.at(static_cast<std::size_t>(channel));
  return std::min<std::uint64_t>(w.total, window_);
}

namespace {

std::vector<int> candidate_channels(int num_channels, std::optional<int> exclude) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(num_channels));
  for (int ch = 0; ch < num_channels; ++ch) {
    if (exclude && *exclude == ch && num_channels > 1) continue;
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::vector<int> random_ranking(int num_channels, std::optional<int> exclude, RandomStream& rs) {
  std::vector<int> out = candidate_channels(num_channels, exclude);
  shuffle_vector(out, rs);
  return out;
}

std::vector<int> probability_ranking(const IdleHistory& history, std::optional<int> exclude,
                                     RandomStream& rs) {
  std::vector<int> out = candidate_channels(history.num_channels(), exclude);
  // Random order first, then a stable sort by estimate: exact ties stay
  // uniformly ordered instead of favoring low channel indices.
  shuffle_vector(out, rs);
  std::stable_sort(out.begin(), out.end(), [&history](int a, int b) {
    return history.idle_probability(a) > history.idle_probability(b);
  });
  return out;
}

int random_select(int num_channels, std::optional<int> exclude, RandomStream& rs) {
  if (num_channels < 1) throw std::invalid_argument("random_select: need at least one channel");
  std::vector<int> c = candidate_channels(num_channels, exclude);
  return c[static_cast<std::size_t>(uniform_index(rs, c.size()))];
}

int prob_select(const IdleHistory& history, std::optional<int> exclude, RandomStream& rs) {
  return probability_ranking(history, exclude, rs).front();
}

void handle_pu_collision(SuPairState& pair) {
  pair.flags.fds = false;
  pair.flags.fcs = true;
  pair.last_channel = pair.channel;
  pair.channel.reset();
  pair.pause_logged = false;
}

}  // namespace crsim
