#ifndef MC_CHANNEL_HPP
#define MC_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "mc/ig_stats.hpp"
#include "mc/random.hpp"

namespace mc {

using BitSeq = std::vector<std::uint8_t>;

// MoSK channel with one particle per slot.
struct ChannelConfig {
  IgParams ig;
  double slot_interval;          // T_s, s
  int max_level = 8;             // truncation of the P_c table
  double truncation_tol = 1e-10; // build_weights rejects P_c(max_level) above this

  void validate() const;
};

// Truncated crossover probability table and the per-level distance weights
// derived from it. Immutable once built; safe to share across decoders.
struct CrossoverWeights {
  std::vector<double> pc;  // P_c(0..l_max)
  std::vector<double> wc;  // W_c(l) = log P_c(0) - log P_c(l), W_c(0) = 0
  double extension_slope;  // per-level weight increment past l_max

  int max_level() const { return static_cast<int>(pc.size()) - 1; }

  // W_c(l), extended linearly beyond the table
  double weight(int level) const {
    if (level <= max_level()) return wc[static_cast<std::size_t>(level)];
    return wc.back() + extension_slope * (level - max_level());
  }

  // log P_c(l), consistent with the extended weights
  double log_pc(int level) const;
};

// P_c(l) for l >= 1 by adaptive quadrature of the first-hitting-time
// integral; relative tolerance 1e-9.
double crossover_probability(int level, const ChannelConfig& cfg);

// Table up to cfg.max_level with P_c(0) as the complement of the truncated
// sum. Throws ConfigError if the truncated tail exceeds cfg.truncation_tol
// or if some P_c(l) >= P_c(0).
CrossoverWeights build_weights(const ChannelConfig& cfg);

// Same, but grows max_level (up to level_cap) until the tail probability
// drops below cfg.truncation_tol.
CrossoverWeights build_weights_auto(ChannelConfig cfg, int level_cap = 200);

// Release one particle per slot and read bits back in arrival order.
// Pure reordering: the output is a permutation of the input.
BitSeq transmit(const BitSeq& bits, const ChannelConfig& cfg, RandomStream& rng);

}  // namespace mc

#endif
