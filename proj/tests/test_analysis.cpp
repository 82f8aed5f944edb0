#include <doctest.h>

#include <cmath>
#include <vector>

#include "mc/analysis.hpp"
#include "mc/errors.hpp"

using namespace mc;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.schemes = {Scheme::uncoded, Scheme::conv_cd};
  cfg.physical = PhysicalConfig{298.0, 0.894e-3, 10e-9, 10e-6, 10e-6};
  cfg.tb_grid = {1.0};
  cfg.frames = 64;
  cfg.info_bits_per_frame = 48;
  cfg.base_seed = 9;
  cfg.min_bit_errors = 1000000;
  return cfg;
}

}  // namespace

TEST_CASE("scheme metadata") {
  CHECK(scheme_rate(Scheme::uncoded) == 1.0);
  CHECK(scheme_rate(Scheme::hamming74) == doctest::Approx(4.0 / 7.0));
  CHECK(scheme_rate(Scheme::conv_cd) == 0.5);
  CHECK(scheme_name(Scheme::conv_lsd) == std::string("conv_lsd"));
  CHECK(scheme_metric_name(Scheme::conv_cd) == std::string("crossover"));
  CHECK(scheme_metric_name(Scheme::uncoded) == std::string("none"));
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config();
  cfg.tb_grid.clear();
  CHECK_THROWS_AS(sweep(cfg), ConfigError);
  cfg = small_config();
  cfg.schemes.clear();
  CHECK_THROWS_AS(sweep(cfg), ConfigError);
  cfg = small_config();
  cfg.tb_grid = {0.0};
  CHECK_THROWS_AS(sweep(cfg), ConfigError);
  cfg = small_config();
  cfg.schemes = {Scheme::hamming74};
  cfg.info_bits_per_frame = 50;  // not a multiple of 4
  CHECK_THROWS_AS(sweep(cfg), ConfigError);
}

TEST_CASE("wide spacing yields zero errors for every scheme") {
  ExperimentConfig cfg = small_config();
  cfg.schemes = {Scheme::uncoded, Scheme::hamming74, Scheme::conv_hd,
                 Scheme::conv_cd, Scheme::conv_lsd};
  cfg.info_bits_per_frame = 100;
  cfg.frames = 100;
  for (Scheme s : cfg.schemes) {
    BerPoint p = run_ber_point(cfg, s, 100.0);
    CHECK(p.bits_sent >= 10000);
    CHECK(p.bit_errors == 0);
    CHECK(p.ber() == 0.0);
    CHECK(p.decode_failures == 0);
  }
}

TEST_CASE("points are deterministic and thread-count independent") {
  ExperimentConfig cfg = small_config();
  BerPoint a = run_ber_point(cfg, Scheme::conv_cd, 1.0);
  BerPoint b = run_ber_point(cfg, Scheme::conv_cd, 1.0);
  CHECK(a.bit_errors == b.bit_errors);
  CHECK(a.bits_sent == b.bits_sent);
  CHECK(a.frames == b.frames);

  cfg.threads = 1;
  BerPoint serial = run_ber_point(cfg, Scheme::conv_cd, 1.0);
  cfg.threads = 4;
  BerPoint parallel = run_ber_point(cfg, Scheme::conv_cd, 1.0);
  CHECK(serial.bit_errors == parallel.bit_errors);
  CHECK(serial.bits_sent == parallel.bits_sent);
}

TEST_CASE("singleton sweep equals the point computation") {
  ExperimentConfig cfg = small_config();
  std::vector<BerPoint> pts = sweep(cfg);
  REQUIRE(pts.size() == 2);
  BerPoint direct = run_ber_point(cfg, Scheme::uncoded, 1.0);
  CHECK(pts[0].bit_errors == direct.bit_errors);
  CHECK(pts[0].bits_sent == direct.bits_sent);
  CHECK(pts[0].tb_seconds == 1.0);
}

TEST_CASE("disjoint seeds agree within three combined standard errors") {
  ExperimentConfig cfg = small_config();
  cfg.schemes = {Scheme::uncoded};
  cfg.frames = 256;
  cfg.info_bits_per_frame = 100;
  cfg.base_seed = 1;
  BerPoint a = run_ber_point(cfg, Scheme::uncoded, 1.0);
  cfg.base_seed = 999;
  BerPoint b = run_ber_point(cfg, Scheme::uncoded, 1.0);
  double se = std::sqrt(a.stderr_estimate() * a.stderr_estimate() +
                        b.stderr_estimate() * b.stderr_estimate());
  CHECK(std::abs(a.ber() - b.ber()) < 3.0 * se);
}

TEST_CASE("early stopping respects the error target") {
  ExperimentConfig cfg = small_config();
  cfg.schemes = {Scheme::uncoded};
  cfg.frames = 10000;
  cfg.min_bit_errors = 50;
  BerPoint p = run_ber_point(cfg, Scheme::uncoded, 1.0);
  CHECK(p.bit_errors >= 50);
  CHECK(p.frames < 10000);
}

TEST_CASE("error event enumeration") {
  CodeSet cs = build_code(3, {05, 07});
  CHECK(enumerate_error_events(cs, 6, 4).empty());  // below the free distance
  auto events = enumerate_error_events(cs, 6, 1000);
  CHECK(events.size() == (1u << 6) - 1);  // every nonzero codeword
  long below6 = 0;
  for (const auto& e : events) {
    CHECK(e.info_weight >= 1);
    CHECK(e.competitor != e.reference);
    int w = 0;
    for (auto b : e.competitor) w += b;
    CHECK(w >= 5);
    if (w <= 6) ++below6;
  }
  CHECK(below6 == static_cast<long>(enumerate_error_events(cs, 6, 6).size()));
  CHECK_THROWS_AS(enumerate_error_events(cs, 11, 5), ConfigError);
}

TEST_CASE("approx_ber limiting behavior") {
  CodeSet cs = build_code(3, {05, 07});
  ChannelConfig ch{IgParams{1.0, 2.049}, 1.0, 8, 1e-10};
  ApproxLimits limits{4, 2, 2, 4};
  CHECK(approx_ber(cs, ch, 1.0, ApproxLimits{4, 2, 0, 4}) == 0.0);
  CHECK(approx_ber(cs, ch, 200.0, limits) < 1e-6);
  // monotone on the mid grid; below ~1 s the bounded enumeration truncates
  // most of the crossover mass, so the small-T_b end is excluded
  double p1 = approx_ber(cs, ch, 2.0, limits);
  double p2 = approx_ber(cs, ch, 4.0, limits);
  CHECK(p1 > 0.0);
  CHECK(p2 <= p1);
  ApproxLimits huge{10, 8, 6, 2};
  CHECK_THROWS_AS(approx_ber(cs, ch, 1.0, huge), NumericalError);
}
