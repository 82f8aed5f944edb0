#ifndef MC_CONVCODE_HPP
#define MC_CONVCODE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "mc/channel.hpp"

namespace mc {

// Rate-1/2 feedforward convolutional code. Tap masks are K bits wide with
// the most significant bit on the current input; per-step outputs are
// emitted with the larger mask first, matching the usual (7,5)-style
// listings of these codes.
struct ConvCode {
  int constraint_length;                 // K
  std::array<std::uint32_t, 2> generators;  // tap masks (values, not octal text)

  int state_count() const { return 1 << (constraint_length - 1); }
};

struct Trellis {
  struct Branch {
    std::uint16_t next_state;
    std::uint8_t out0, out1;
  };
  // branches[state][input_bit]
  std::vector<std::array<Branch, 2>> branches;
};

struct CodeSet {
  ConvCode code;
  Trellis trellis;
};

// K in 2..10; masks nonzero and within K bits.
CodeSet build_code(int constraint_length, std::array<std::uint32_t, 2> generators);

// Zero-state start, K-1 zero tail bits; output length 2*(len(info)+K-1).
BitSeq encode(const CodeSet& cs, const BitSeq& info);

// Systematic (7,4) Hamming code, single-error correcting.
BitSeq hamming74_encode(const BitSeq& info4);
BitSeq hamming74_decode(const BitSeq& word7);

}  // namespace mc

#endif
