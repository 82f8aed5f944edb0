#ifndef MC_ANALYSIS_HPP
#define MC_ANALYSIS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mc/channel.hpp"
#include "mc/convcode.hpp"
#include "mc/decoder.hpp"
#include "mc/ig_stats.hpp"

namespace mc {

enum class Scheme { uncoded, hamming74, conv_hd, conv_cd, conv_lsd };

const char* scheme_name(Scheme s);
const char* scheme_metric_name(Scheme s);
double scheme_rate(Scheme s);  // info bits per channel bit

struct ExperimentConfig {
  std::vector<Scheme> schemes;
  PhysicalConfig physical;
  int constraint_length = 3;
  std::array<std::uint32_t, 2> generators{5, 7};
  std::vector<double> tb_grid;          // equivalent info-bit intervals, s
  long frames = 4000;                   // per point, upper limit
  int info_bits_per_frame = 1000;
  std::uint64_t base_seed = 1;
  long min_bit_errors = 200;            // early-stop target per point
  int l_max = 8;
  double truncation_tol = 1e-10;
  int threads = 0;                      // 0: hardware concurrency

  void validate() const;
};

struct BerPoint {
  Scheme scheme;
  double tb_seconds;
  long frames = 0;
  long bits_sent = 0;
  long bit_errors = 0;
  long decode_failures = 0;

  double ber() const;
  double stderr_estimate() const;
};

// One Monte Carlo point: frame trials at T_s = T_b * R with deterministic
// per-frame seeds, stopping at the frame limit or the bit-error target.
BerPoint run_ber_point(const ExperimentConfig& cfg, Scheme scheme, double tb);

// One point per (scheme, tb). Values are independent of evaluation order
// and of the thread count.
std::vector<BerPoint> sweep(const ExperimentConfig& cfg);

struct ErrorEvent {
  BitSeq reference;   // codeword x
  BitSeq competitor;  // codeword R
  int info_weight;    // differing information bits
};

// Competitors of the all-zero codeword with Hamming weight up to the given
// bound (by code linearity the event set is reference-independent).
std::vector<ErrorEvent> enumerate_error_events(const CodeSet& cs, int info_len,
                                               int max_hamming_weight);

struct ApproxLimits {
  int info_len = 6;
  int max_level = 3;
  int max_crossovers = 3;
  int reference_samples = 8;
};

// Union-style BER approximation: enumerate bounded crossover vectors, apply
// each to sampled reference codewords and accumulate the info-bit weight of
// every competitor that lands closer to the disturbed frame.
double approx_ber(const CodeSet& cs, const ChannelConfig& channel, double tb,
                  const ApproxLimits& limits, std::uint64_t seed = 12345);

}  // namespace mc

#endif
