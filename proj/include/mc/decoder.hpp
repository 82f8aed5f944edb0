#ifndef MC_DECODER_HPP
#define MC_DECODER_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mc/channel.hpp"
#include "mc/convcode.hpp"

namespace mc {

enum class MetricKind { crossover_distance, level_sum, hamming };

struct Metric {
  MetricKind kind;
  const CrossoverWeights* weights = nullptr;  // required for crossover_distance

  double level_weight(int level) const;
};

// Received frame with per-value position lists (0-based), so a hypothesized
// bit of value b with value-rank c maps to position positions[b][c].
struct ReceivedFrame {
  BitSeq bits;
  std::array<std::vector<int>, 2> positions;

  explicit ReceivedFrame(BitSeq received);
};

// A transmitted bit whose crossover level is not yet determined: it waits
// until the hypothesized prefix contains `rank` bits of the opposite value.
struct PendingLevel {
  int tx_index;  // 0-based position in the hypothesized codeword
  int rank;      // 1-based count of opposite-valued bits it waits for
};

// Per-path matching state of the incremental rank-matching bijection.
// Levels that finalize immediately are provably zero, so no per-rank
// position table is needed; only the counters and the pending entries.
struct SurvivorState {
  double metric = 0.0;
  std::array<int, 2> bit_count{0, 0};           // hypothesized 0s / 1s
  std::array<std::vector<PendingLevel>, 2> pending;  // keyed by awaited value
  bool alive = true;

  void kill();
};

// Finalized metric plus an admissible lower bound on the weight of the
// still-pending levels: a pending entry of rank m resolves no earlier than
// the index where the m-th opposite-valued bit can first appear. Survivor
// merges compare this key between paths of equal composition (where the
// pending rank multisets coincide and only the transmit indices differ);
// the stored metric itself stays finalized-only.
double survivor_comparison_key(const SurvivorState& s, const Metric& metric);

// Append branch bits (codeword positions start_index, start_index+1, ...)
// to the survivor and return the finalized weight increment. Composition
// overflow against the received frame kills the survivor.
double extend_survivor(SurvivorState& s, std::span<const std::uint8_t> branch_bits,
                       int start_index, const ReceivedFrame& frame,
                       const Metric& metric);

// Modified Viterbi decoding over the selected metric. Crossover metrics keep
// one survivor per (trellis state, ones count) so merges only ever compare
// equal-composition paths; the returned info bits (tail dropped) belong to
// the minimum-metric survivor ending in the zero state with full composition
// match, or nullopt when no feasible survivor exists.
std::optional<BitSeq> viterbi_decode(const CodeSet& cs, const BitSeq& received,
                                     const Metric& metric);

// Classical terminated hard-decision Viterbi (always succeeds).
BitSeq hamming_viterbi_decode(const CodeSet& cs, const BitSeq& received);

}  // namespace mc

#endif
