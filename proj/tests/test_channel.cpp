#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mc/channel.hpp"
#include "mc/crossover.hpp"
#include "mc/errors.hpp"

using namespace mc;

namespace {

const IgParams kIg{1.0, 2.049};

ChannelConfig cfg_at(double ts, int lmax = 8, double tol = 1e-10) {
  return ChannelConfig{kIg, ts, lmax, tol};
}

}  // namespace

TEST_CASE("crossover probabilities at the reference link, Ts = 1") {
  // frozen values from an independent quadrature of the defining integral
  const double expected[] = {8.992e-2, 2.087e-2, 5.306e-3, 1.437e-3,
                             4.068e-4, 1.189e-4, 3.563e-5, 1.089e-5};
  for (int l = 1; l <= 8; ++l) {
    double p = crossover_probability(l, cfg_at(1.0));
    CHECK(p == doctest::Approx(expected[l - 1]).epsilon(2e-3));
  }
  CHECK(crossover_probability(1, cfg_at(2.0)) ==
        doctest::Approx(2.572e-2).epsilon(2e-3));
  CHECK(crossover_probability(1, cfg_at(0.25)) ==
        doctest::Approx(1.342e-1).epsilon(2e-3));
}

TEST_CASE("crossover probability decreases with slot spacing") {
  // below ~0.5 s the level-1 share shrinks as mass moves to higher levels,
  // so the decreasing stretch starts at moderate spacing
  double prev = 1.0;
  for (double ts : {0.5, 1.0, 2.0, 4.0}) {
    double p = crossover_probability(1, cfg_at(ts));
    CHECK(p < prev);
    prev = p;
  }
  CHECK(crossover_probability(1, cfg_at(100.0)) < 1e-6);
}

TEST_CASE("empirical crossover levels match the table") {
  ChannelConfig cfg = cfg_at(1.0);
  CrossoverWeights w = build_weights_auto(cfg);
  const int slots = 20000;
  RandomStream rng(2024);
  std::vector<double> arrival(slots);
  for (int i = 0; i < slots; ++i) {
    arrival[static_cast<std::size_t>(i)] =
        i * cfg.slot_interval + ig_sample(rng, cfg.ig);
  }
  std::vector<int> order(slots);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return arrival[static_cast<std::size_t>(a)] < arrival[static_cast<std::size_t>(b)]; });
  BijectiveMatch match;
  match.forward.assign(static_cast<std::size_t>(slots) + 1, 0);
  match.inverse.assign(static_cast<std::size_t>(slots) + 1, 0);
  for (int pos = 0; pos < slots; ++pos) {
    match.forward[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)]) + 1] = pos + 1;
    match.inverse[static_cast<std::size_t>(pos) + 1] = order[static_cast<std::size_t>(pos)] + 1;
  }
  std::vector<long> counts(16, 0);
  for (int k = 1; k <= slots; ++k) {
    int l = crossover_level(match, k);
    if (l < 16) ++counts[static_cast<std::size_t>(l)];
  }
  for (int l = 1; l <= 2; ++l) {
    double p = w.pc[static_cast<std::size_t>(l)];
    double freq = static_cast<double>(counts[static_cast<std::size_t>(l)]) / slots;
    double se = std::sqrt(p * (1.0 - p) / slots);
    CHECK(std::abs(freq - p) < 4.0 * se);
  }
}

TEST_CASE("weight table identities") {
  CrossoverWeights w = build_weights_auto(cfg_at(1.0));
  CHECK(w.wc[0] == 0.0);
  double sum = std::accumulate(w.pc.begin(), w.pc.end(), 0.0);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  for (int l = 0; l <= w.max_level(); ++l) {
    double p = w.pc[static_cast<std::size_t>(l)];
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    CHECK(w.weight(l) ==
          doctest::Approx(std::log(w.pc[0]) - std::log(p)).epsilon(1e-12));
    CHECK(std::exp(w.log_pc(l)) == doctest::Approx(p).epsilon(1e-12));
  }
  // weights grow with the level and extend linearly past the table
  for (int l = 1; l <= w.max_level(); ++l) {
    CHECK(w.weight(l) > w.weight(l - 1));
  }
  CHECK(w.extension_slope > 0.0);
  CHECK(w.weight(w.max_level() + 3) ==
        doctest::Approx(w.wc.back() + 3.0 * w.extension_slope));
  CHECK(w.pc.back() <= 1e-10);
}

TEST_CASE("strict build_weights rejects an undersized table") {
  // P_c(8) at Ts = 1 is ~1e-5, far above the default truncation tolerance
  CHECK_THROWS_AS(build_weights(cfg_at(1.0)), ConfigError);
}

TEST_CASE("channel config validation") {
  CHECK_THROWS_AS(crossover_probability(0, cfg_at(1.0)), ConfigError);
  CHECK_THROWS_AS(crossover_probability(1, cfg_at(0.0)), ConfigError);
  ChannelConfig bad = cfg_at(1.0);
  bad.max_level = 0;
  CHECK_THROWS_AS(build_weights(bad), ConfigError);
}

TEST_CASE("transmit is a deterministic permutation") {
  ChannelConfig cfg = cfg_at(0.5);
  RandomStream rng(5), rng2(5);
  BitSeq x;
  RandomStream bits(9);
  for (int i = 0; i < 400; ++i) x.push_back(bits.next_u64() & 1);
  BitSeq y = transmit(x, cfg, rng);
  BitSeq y2 = transmit(x, cfg, rng2);
  CHECK(y == y2);
  CHECK(y.size() == x.size());
  CHECK(std::count(y.begin(), y.end(), 1) == std::count(x.begin(), x.end(), 1));
}

TEST_CASE("transmit at wide spacing is the identity") {
  ChannelConfig cfg = cfg_at(100.0);
  RandomStream bits(11);
  for (int f = 0; f < 50; ++f) {
    BitSeq x;
    for (int i = 0; i < 100; ++i) x.push_back(bits.next_u64() & 1);
    RandomStream rng(static_cast<std::uint64_t>(1000 + f));
    CHECK(transmit(x, cfg, rng) == x);
  }
}

TEST_CASE("transmit rejects empty input") {
  ChannelConfig cfg = cfg_at(1.0);
  RandomStream rng(1);
  CHECK_THROWS_AS(transmit(BitSeq{}, cfg, rng), ConfigError);
}
