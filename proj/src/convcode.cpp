#include "mc/convcode.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "mc/errors.hpp"

namespace mc {

namespace {

std::uint8_t parity(std::uint32_t v) {
  return static_cast<std::uint8_t>(std::popcount(v) & 1);
}

}  // namespace

CodeSet build_code(int constraint_length, std::array<std::uint32_t, 2> generators) {
  if (constraint_length < 2 || constraint_length > 10) {
    throw ConfigError("build_code: constraint length must lie in 2..10");
  }
  std::uint32_t mask_limit = 1u << constraint_length;
  for (std::uint32_t g : generators) {
    if (g == 0) throw ConfigError("build_code: zero generator mask");
    if (g >= mask_limit) {
      throw ConfigError("build_code: generator mask " + std::to_string(g) +
                        " wider than " + std::to_string(constraint_length) +
                        " bits");
    }
  }
  // first output tap set is the larger mask
  if (generators[0] < generators[1]) std::swap(generators[0], generators[1]);

  CodeSet cs;
  cs.code = ConvCode{constraint_length, generators};
  const int states = cs.code.state_count();
  cs.trellis.branches.resize(static_cast<std::size_t>(states));
  for (int s = 0; s < states; ++s) {
    for (int b = 0; b < 2; ++b) {
      // shift-register window: input bit on top of the K-1 previous bits
      std::uint32_t window = (static_cast<std::uint32_t>(b) << (constraint_length - 1)) |
                             static_cast<std::uint32_t>(s);
      Trellis::Branch br;
      br.out0 = parity(window & generators[0]);
      br.out1 = parity(window & generators[1]);
      br.next_state = static_cast<std::uint16_t>(window >> 1);
      cs.trellis.branches[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)] = br;
    }
  }
  return cs;
}

BitSeq encode(const CodeSet& cs, const BitSeq& info) {
  if (info.empty()) throw ConfigError("encode: empty info sequence");
  const int tail = cs.code.constraint_length - 1;
  BitSeq out;
  out.reserve(2 * (info.size() + static_cast<std::size_t>(tail)));
  std::uint16_t state = 0;
  auto step = [&](std::uint8_t bit) {
    const auto& br = cs.trellis.branches[state][bit];
    out.push_back(br.out0);
    out.push_back(br.out1);
    state = br.next_state;
  };
  for (std::uint8_t b : info) step(b & 1);
  for (int i = 0; i < tail; ++i) step(0);
  return out;
}

BitSeq hamming74_encode(const BitSeq& info4) {
  if (info4.size() != 4) throw ConfigError("hamming74_encode: need 4 bits");
  std::uint8_t d1 = info4[0], d2 = info4[1], d3 = info4[2], d4 = info4[3];
  BitSeq w{d1, d2, d3, d4,
           static_cast<std::uint8_t>(d1 ^ d2 ^ d4),
           static_cast<std::uint8_t>(d1 ^ d3 ^ d4),
           static_cast<std::uint8_t>(d2 ^ d3 ^ d4)};
  return w;
}

BitSeq hamming74_decode(const BitSeq& word7) {
  if (word7.size() != 7) throw ConfigError("hamming74_decode: need 7 bits");
  BitSeq w = word7;
  int s1 = w[0] ^ w[1] ^ w[3] ^ w[4];
  int s2 = w[0] ^ w[2] ^ w[3] ^ w[5];
  int s3 = w[1] ^ w[2] ^ w[3] ^ w[6];
  static constexpr int flip_for_syndrome[8] = {
      // index = s1 | s2<<1 | s3<<2, value = position to flip (-1: clean)
      -1, 4, 5, 0, 6, 1, 2, 3};
  int pos = flip_for_syndrome[s1 | (s2 << 1) | (s3 << 2)];
  if (pos >= 0) w[static_cast<std::size_t>(pos)] ^= 1;
  return BitSeq{w[0], w[1], w[2], w[3]};
}

}  // namespace mc
