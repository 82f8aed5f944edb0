#include "mc/decoder.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "mc/errors.hpp"

namespace mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double Metric::level_weight(int level) const {
  switch (kind) {
    case MetricKind::crossover_distance:
      return weights->weight(level);
    case MetricKind::level_sum:
      return static_cast<double>(level);
    case MetricKind::hamming:
      return 0.0;  // hamming branches never price crossover levels
  }
  return 0.0;
}

ReceivedFrame::ReceivedFrame(BitSeq received) : bits(std::move(received)) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    positions[bits[i] & 1].push_back(static_cast<int>(i));
  }
}

void SurvivorState::kill() {
  alive = false;
  metric = kInf;
}

double survivor_comparison_key(const SurvivorState& s, const Metric& metric) {
  if (!s.alive) return kInf;
  double bound = 0.0;
  const int hyp_len = s.bit_count[0] + s.bit_count[1];
  for (int w = 0; w < 2; ++w) {
    for (const PendingLevel& e : s.pending[static_cast<std::size_t>(w)]) {
      int remaining = e.rank - s.bit_count[static_cast<std::size_t>(w)];  // >= 1
      bound += metric.level_weight(hyp_len + remaining - 1 - e.tx_index);
    }
  }
  return s.metric + bound;
}

double extend_survivor(SurvivorState& s, std::span<const std::uint8_t> branch_bits,
                       int start_index, const ReceivedFrame& frame,
                       const Metric& metric) {
  if (!s.alive) return kInf;
  if (metric.kind == MetricKind::hamming) {
    double delta = 0.0;
    for (std::size_t i = 0; i < branch_bits.size(); ++i) {
      auto pos = static_cast<std::size_t>(start_index) + i;
      delta += (branch_bits[i] & 1) != (frame.bits[pos] & 1);
    }
    s.metric += delta;
    return delta;
  }

  double delta = 0.0;
  for (std::size_t i = 0; i < branch_bits.size(); ++i) {
    const int b = branch_bits[i] & 1;
    const int k = start_index + static_cast<int>(i);
    const int rank = s.bit_count[static_cast<std::size_t>(b)];
    const auto& value_positions = frame.positions[static_cast<std::size_t>(b)];
    if (rank >= static_cast<int>(value_positions.size())) {
      // more b-bits hypothesized than the frame contains: no valid mapping
      s.kill();
      return kInf;
    }
    const int mapped = value_positions[static_cast<std::size_t>(rank)];
    const int opposite = 1 - b;
    // opposite-valued received bits left of the mapped position; the level
    // of this bit is fixed by the hypothesis's bit of that opposite rank
    const int needed = mapped - rank;
    if (needed > s.bit_count[static_cast<std::size_t>(opposite)]) {
      // that bit lies in the future: level finalizes on its arrival
      s.pending[static_cast<std::size_t>(opposite)].push_back(PendingLevel{k, needed});
    }
    // else the rank-`needed` opposite bit precedes index k, so the level
    // clamps to zero and contributes nothing

    s.bit_count[static_cast<std::size_t>(b)] += 1;
    auto& queue = s.pending[static_cast<std::size_t>(b)];
    while (!queue.empty() &&
           queue.front().rank <= s.bit_count[static_cast<std::size_t>(b)]) {
      delta += metric.level_weight(k - queue.front().tx_index);
      queue.erase(queue.begin());
    }
  }
  s.metric += delta;
  return delta;
}

namespace {

// Classical terminated hard-decision Viterbi over per-branch Hamming
// increments, one survivor per trellis state.
BitSeq hamming_decode_impl(const CodeSet& cs, const BitSeq& received) {
  const int steps = static_cast<int>(received.size() / 2);
  const int states = cs.code.state_count();
  std::vector<double> current(static_cast<std::size_t>(states), kInf);
  current[0] = 0.0;
  std::vector<double> next(static_cast<std::size_t>(states));
  std::vector<std::uint8_t> trace(static_cast<std::size_t>(steps) *
                                  static_cast<std::size_t>(states));

  for (int t = 0; t < steps; ++t) {
    std::fill(next.begin(), next.end(), kInf);
    std::vector<std::uint8_t> step_trace(static_cast<std::size_t>(states));
    // ascending predecessor order so exact ties keep the smaller index
    for (int s = 0; s < states; ++s) {
      if (current[static_cast<std::size_t>(s)] == kInf) continue;
      for (int b = 0; b < 2; ++b) {
        const auto& br = cs.trellis.branches[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
        double m = current[static_cast<std::size_t>(s)];
        m += (br.out0 & 1) != (received[static_cast<std::size_t>(2 * t)] & 1);
        m += (br.out1 & 1) != (received[static_cast<std::size_t>(2 * t) + 1] & 1);
        if (m < next[br.next_state]) {
          next[br.next_state] = m;
          step_trace[br.next_state] =
              static_cast<std::uint8_t>((s << 1) | b);
        }
      }
    }
    std::copy(step_trace.begin(), step_trace.end(),
              trace.begin() + static_cast<std::ptrdiff_t>(t) * states);
    current.swap(next);
  }

  BitSeq info(static_cast<std::size_t>(steps));
  int state = 0;
  for (int t = steps - 1; t >= 0; --t) {
    std::uint8_t e = trace[static_cast<std::size_t>(t) *
                               static_cast<std::size_t>(states) +
                           static_cast<std::size_t>(state)];
    info[static_cast<std::size_t>(t)] = e & 1;
    state = e >> 1;
  }
  info.resize(static_cast<std::size_t>(steps - (cs.code.constraint_length - 1)));
  return info;
}

}  // namespace

std::optional<BitSeq> viterbi_decode(const CodeSet& cs, const BitSeq& received,
                                     const Metric& metric) {
  if (metric.kind == MetricKind::crossover_distance && metric.weights == nullptr) {
    throw ConfigError("viterbi_decode: crossover metric needs weights");
  }
  const int tail = cs.code.constraint_length - 1;
  if (received.size() % 2 != 0 ||
      static_cast<int>(received.size() / 2) <= tail) {
    throw ConfigError("viterbi_decode: received length is not 2*(N_info+K-1)");
  }
  if (metric.kind == MetricKind::hamming) {
    return hamming_decode_impl(cs, received);
  }

  const int steps = static_cast<int>(received.size() / 2);
  const int states = cs.code.state_count();
  const int total = static_cast<int>(received.size());
  const ReceivedFrame frame(received);
  const int total_ones = static_cast<int>(frame.positions[1].size());

  // Survivors are keyed by (trellis state, hypothesized ones count). Paths
  // merging in one bucket share bit composition, so their unresolved levels
  // have identical rank multisets and identical feasibility futures, which
  // makes the bucket-local comparison key a sound merge rule; see
  // survivor_comparison_key. Per-state merging across compositions is not
  // sound and loses feasible paths.
  const int width = total + 1;
  auto bucket = [width](int s, int c) {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c);
  };
  const std::size_t buckets = static_cast<std::size_t>(states) *
                              static_cast<std::size_t>(width);

  SurvivorState killed;
  killed.kill();
  std::vector<SurvivorState> current(buckets, killed);
  std::vector<SurvivorState> next(buckets, killed);
  current[bucket(0, 0)] = SurvivorState{};
  std::vector<double> next_key(buckets, kInf);
  // traceback entry per bucket: predecessor state and input bit; the
  // predecessor ones count follows from the branch output
  std::vector<std::uint16_t> trace(static_cast<std::size_t>(steps) * buckets);

  for (int t = 0; t < steps; ++t) {
    std::fill(next.begin(), next.end(), killed);
    std::fill(next_key.begin(), next_key.end(), kInf);
    const int c_hi = std::min(2 * t, total_ones);
    const int c_lo = std::max(0, 2 * t - (total - total_ones));
    // ascending predecessor order so exact key ties keep the smaller index
    for (int s = 0; s < states; ++s) {
      for (int c = c_lo; c <= c_hi; ++c) {
        const SurvivorState& prev = current[bucket(s, c)];
        if (!prev.alive) continue;
        for (int b = 0; b < 2; ++b) {
          const auto& br = cs.trellis.branches[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
          const std::uint8_t bits[2] = {br.out0, br.out1};
          SurvivorState cand = prev;
          extend_survivor(cand, bits, 2 * t, frame, metric);
          if (!cand.alive) continue;
          const int c_new = c + (br.out0 & 1) + (br.out1 & 1);
          const std::size_t slot = bucket(br.next_state, c_new);
          double key = survivor_comparison_key(cand, metric);
          if (key < next_key[slot]) {
            next[slot] = std::move(cand);
            next_key[slot] = key;
            trace[static_cast<std::size_t>(t) * buckets + slot] =
                static_cast<std::uint16_t>((s << 1) | b);
          }
        }
      }
    }
    current.swap(next);
  }

  const SurvivorState& terminal = current[bucket(0, total_ones)];
  if (!terminal.alive) return std::nullopt;
  assert(terminal.pending[0].empty() && terminal.pending[1].empty());

  BitSeq info(static_cast<std::size_t>(steps));
  int state = 0;
  int ones = total_ones;
  for (int t = steps - 1; t >= 0; --t) {
    std::uint16_t e =
        trace[static_cast<std::size_t>(t) * buckets + bucket(state, ones)];
    const int bit = e & 1;
    const int prev_state = e >> 1;
    const auto& br = cs.trellis.branches[static_cast<std::size_t>(prev_state)][static_cast<std::size_t>(bit)];
    info[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(bit);
    ones -= (br.out0 & 1) + (br.out1 & 1);
    state = prev_state;
  }
  info.resize(static_cast<std::size_t>(steps - tail));
  return info;
}

BitSeq hamming_viterbi_decode(const CodeSet& cs, const BitSeq& received) {
  auto out = viterbi_decode(cs, received, Metric{MetricKind::hamming});
  // the hamming metric never kills a survivor, so decoding always succeeds
  return *out;
}

}  // namespace mc
