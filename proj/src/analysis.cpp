#include "mc/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <functional>
#include <future>
#include <numeric>
#include <thread>

#include "mc/crossover.hpp"
#include "mc/errors.hpp"

namespace mc {

namespace {

std::uint64_t tb_bits(double tb) {
  std::uint64_t u;
  static_assert(sizeof(u) == sizeof(tb));
  std::memcpy(&u, &tb, sizeof(u));
  return u;
}

BitSeq random_bits(RandomStream& rng, int n) {
  BitSeq out(static_cast<std::size_t>(n));
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return out;
}

long count_ones(const BitSeq& s) {
  return std::count(s.begin(), s.end(), std::uint8_t{1});
}

struct FrameResult {
  long bits = 0;
  long errors = 0;
  bool failed = false;
};

// fixed batch size so early stopping is independent of the thread count
constexpr long kBatchFrames = 32;

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::uncoded: return "uncoded";
    case Scheme::hamming74: return "hamming74";
    case Scheme::conv_hd: return "conv_hd";
    case Scheme::conv_cd: return "conv_cd";
    case Scheme::conv_lsd: return "conv_lsd";
  }
  return "?";
}

const char* scheme_metric_name(Scheme s) {
  switch (s) {
    case Scheme::uncoded: return "none";
    case Scheme::hamming74: return "syndrome";
    case Scheme::conv_hd: return "hamming";
    case Scheme::conv_cd: return "crossover";
    case Scheme::conv_lsd: return "level_sum";
  }
  return "?";
}

double scheme_rate(Scheme s) {
  switch (s) {
    case Scheme::uncoded: return 1.0;
    case Scheme::hamming74: return 4.0 / 7.0;
    default: return 0.5;
  }
}

void ExperimentConfig::validate() const {
  physical.validate();
  if (schemes.empty()) throw ConfigError("config: no schemes selected");
  if (tb_grid.empty()) throw ConfigError("config: empty tb_grid");
  for (double tb : tb_grid) {
    if (!(tb > 0.0)) throw ConfigError("config: tb_grid entries must be positive");
  }
  if (frames < 1) throw ConfigError("config: frames must be >= 1");
  if (info_bits_per_frame < 1) {
    throw ConfigError("config: info_bits_per_frame must be >= 1");
  }
  if (min_bit_errors < 1) throw ConfigError("config: min_bit_errors must be >= 1");
  if (l_max < 1) throw ConfigError("config: l_max must be >= 1");
  if (std::find(schemes.begin(), schemes.end(), Scheme::hamming74) != schemes.end() &&
      info_bits_per_frame % 4 != 0) {
    throw ConfigError("config: hamming74 needs info_bits_per_frame divisible by 4");
  }
}

double BerPoint::ber() const {
  return bits_sent == 0 ? 0.0
                        : static_cast<double>(bit_errors) / static_cast<double>(bits_sent);
}

double BerPoint::stderr_estimate() const {
  if (bits_sent == 0) return 0.0;
  double p = ber();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(bits_sent));
}

namespace {

FrameResult run_frame(const ExperimentConfig& cfg, Scheme scheme, double tb,
                      const ChannelConfig& channel, const CodeSet* cs,
                      const CrossoverWeights* weights, long frame_index) {
  RandomStream rng(RandomStream::mix({cfg.base_seed,
                                      static_cast<std::uint64_t>(scheme),
                                      tb_bits(tb),
                                      static_cast<std::uint64_t>(frame_index)}));
  const int n_info = cfg.info_bits_per_frame;
  BitSeq info = random_bits(rng, n_info);
  FrameResult res;
  res.bits = n_info;

  auto count_errors = [&](const BitSeq& decoded) {
    long e = 0;
    for (int i = 0; i < n_info; ++i) {
      e += decoded[static_cast<std::size_t>(i)] != info[static_cast<std::size_t>(i)];
    }
    return e;
  };

  switch (scheme) {
    case Scheme::uncoded: {
      BitSeq y = transmit(info, channel, rng);
      res.errors = count_errors(y);
      break;
    }
    case Scheme::hamming74: {
      BitSeq coded;
      coded.reserve(static_cast<std::size_t>(n_info) / 4 * 7);
      for (int i = 0; i < n_info; i += 4) {
        BitSeq block(info.begin() + i, info.begin() + i + 4);
        BitSeq w = hamming74_encode(block);
        coded.insert(coded.end(), w.begin(), w.end());
      }
      BitSeq y = transmit(coded, channel, rng);
      BitSeq decoded;
      decoded.reserve(static_cast<std::size_t>(n_info));
      for (std::size_t i = 0; i < y.size(); i += 7) {
        BitSeq block(y.begin() + static_cast<long>(i), y.begin() + static_cast<long>(i) + 7);
        BitSeq d = hamming74_decode(block);
        decoded.insert(decoded.end(), d.begin(), d.end());
      }
      res.errors = count_errors(decoded);
      break;
    }
    case Scheme::conv_hd: {
      BitSeq y = transmit(encode(*cs, info), channel, rng);
      res.errors = count_errors(hamming_viterbi_decode(*cs, y));
      break;
    }
    case Scheme::conv_cd:
    case Scheme::conv_lsd: {
      BitSeq y = transmit(encode(*cs, info), channel, rng);
      Metric metric = scheme == Scheme::conv_cd
                          ? Metric{MetricKind::crossover_distance, weights}
                          : Metric{MetricKind::level_sum};
      auto decoded = viterbi_decode(*cs, y, metric);
      if (decoded) {
        res.errors = count_errors(*decoded);
      } else {
        res.errors = n_info;  // erased frame: all info bits counted as errored
        res.failed = true;
      }
      break;
    }
  }
  return res;
}

}  // namespace

BerPoint run_ber_point(const ExperimentConfig& cfg, Scheme scheme, double tb) {
  cfg.validate();
  DerivedParams derived = derive_params(cfg.physical);
  ChannelConfig channel{derived.ig, tb * scheme_rate(scheme), cfg.l_max,
                        cfg.truncation_tol};

  CodeSet cs;
  CrossoverWeights weights;
  const bool conv = scheme == Scheme::conv_hd || scheme == Scheme::conv_cd ||
                    scheme == Scheme::conv_lsd;
  if (conv) cs = build_code(cfg.constraint_length, cfg.generators);
  if (scheme == Scheme::conv_cd) {
    weights = build_weights_auto(channel);
  }

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : std::max(1u, std::thread::hardware_concurrency());

  BerPoint point;
  point.scheme = scheme;
  point.tb_seconds = tb;

  long frame = 0;
  while (frame < cfg.frames && point.bit_errors < cfg.min_bit_errors) {
    long batch = std::min(kBatchFrames, cfg.frames - frame);
    std::vector<FrameResult> results(static_cast<std::size_t>(batch));
    long per_thread = (batch + threads - 1) / threads;
    std::vector<std::future<void>> tasks;
    for (int th = 0; th < threads; ++th) {
      long lo = th * per_thread;
      long hi = std::min(batch, lo + per_thread);
      if (lo >= hi) break;
      tasks.push_back(std::async(std::launch::async, [&, lo, hi]() {
        for (long f = lo; f < hi; ++f) {
          results[static_cast<std::size_t>(f)] =
              run_frame(cfg, scheme, tb, channel, conv ? &cs : nullptr,
                        scheme == Scheme::conv_cd ? &weights : nullptr,
                        frame + f);
        }
      }));
    }
    for (auto& t : tasks) t.get();
    for (const FrameResult& r : results) {
      point.bits_sent += r.bits;
      point.bit_errors += r.errors;
      point.decode_failures += r.failed;
      ++point.frames;
    }
    frame += batch;
  }
  return point;
}

std::vector<BerPoint> sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<BerPoint> points;
  for (Scheme scheme : cfg.schemes) {
    for (double tb : cfg.tb_grid) {
      points.push_back(run_ber_point(cfg, scheme, tb));
    }
  }
  return points;
}

std::vector<ErrorEvent> enumerate_error_events(const CodeSet& cs, int info_len,
                                               int max_hamming_weight) {
  if (info_len < 1 || info_len > 10) {
    throw ConfigError("enumerate_error_events: info_len must lie in 1..10");
  }
  const std::size_t nc =
      2 * (static_cast<std::size_t>(info_len) + static_cast<std::size_t>(cs.code.constraint_length) - 1);
  BitSeq zero_cw(nc, 0);
  std::vector<ErrorEvent> events;
  for (std::uint32_t m = 1; m < (1u << info_len); ++m) {
    BitSeq info(static_cast<std::size_t>(info_len));
    for (int i = 0; i < info_len; ++i) {
      info[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((m >> i) & 1);
    }
    BitSeq cw = encode(cs, info);
    if (count_ones(cw) <= max_hamming_weight) {
      events.push_back(ErrorEvent{zero_cw, std::move(cw),
                                  static_cast<int>(std::popcount(m))});
    }
  }
  return events;
}

namespace {

// bounded crossover vectors: up to max_crossovers nonzero entries with
// levels 1..max_level, each level reaching an existing later slot
void enumerate_vectors(int n, int max_level, int max_crossovers, int start,
                       std::vector<int>& v, int nonzero,
                       const std::function<void(const std::vector<int>&)>& emit) {
  if (nonzero > 0) emit(v);
  if (nonzero == max_crossovers) return;
  for (int i = start; i < n; ++i) {
    for (int l = 1; l <= max_level && i + l < n; ++l) {
      v[static_cast<std::size_t>(i)] = l;
      enumerate_vectors(n, max_level, max_crossovers, i + 1, v, nonzero + 1, emit);
      v[static_cast<std::size_t>(i)] = 0;
    }
  }
}

BitSeq apply_vector(const BitSeq& x, const std::vector<int>& levels) {
  const int n = static_cast<int>(x.size());
  std::vector<double> key(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int l = levels[static_cast<std::size_t>(i)];
    key[static_cast<std::size_t>(i)] = l > 0 ? i + l + 0.5 : i;
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)]; });
  BitSeq y(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    y[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(order[j])];
  }
  return y;
}

}  // namespace

double approx_ber(const CodeSet& cs, const ChannelConfig& channel, double tb,
                  const ApproxLimits& limits, std::uint64_t seed) {
  if (limits.info_len < 1 || limits.info_len > 10) {
    throw ConfigError("approx_ber: info_len must lie in 1..10");
  }
  if (limits.max_crossovers < 0 || limits.max_level < 1 ||
      limits.reference_samples < 1) {
    throw ConfigError("approx_ber: invalid enumeration limits");
  }
  const int nc = 2 * (limits.info_len + cs.code.constraint_length - 1);
  double combos = 1.0;
  for (int i = 0; i < limits.max_crossovers; ++i) {
    combos *= static_cast<double>(nc) * limits.max_level;
  }
  if (combos > 5e6) {
    throw NumericalError("approx_ber: enumeration budget exceeded");
  }
  if (limits.max_crossovers == 0) return 0.0;  // y = x always

  ChannelConfig ch = channel;
  ch.slot_interval = tb * 0.5;
  CrossoverWeights weights = build_weights_auto(ch);

  // competitor deltas: every nonzero codeword with its info-bit weight
  std::vector<std::pair<BitSeq, int>> deltas;
  for (std::uint32_t m = 1; m < (1u << limits.info_len); ++m) {
    BitSeq info(static_cast<std::size_t>(limits.info_len));
    for (int i = 0; i < limits.info_len; ++i) {
      info[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((m >> i) & 1);
    }
    deltas.emplace_back(encode(cs, info), static_cast<int>(std::popcount(m)));
  }

  std::vector<std::vector<int>> vectors;
  {
    std::vector<int> v(static_cast<std::size_t>(nc), 0);
    std::function<void(const std::vector<int>&)> emit =
        [&](const std::vector<int>& lv) { vectors.push_back(lv); };
    enumerate_vectors(nc, limits.max_level, limits.max_crossovers, 0, v, 0, emit);
  }

  RandomStream rng(seed);
  double total = 0.0;
  for (int ref = 0; ref < limits.reference_samples; ++ref) {
    BitSeq info = random_bits(rng, limits.info_len);
    BitSeq x = encode(cs, info);
    long ones_x = count_ones(x);
    double acc = 0.0;
    for (const auto& lv : vectors) {
      BitSeq y = apply_vector(x, lv);
      CrossoverVector min_v = min_crossover_vector(x, y);
      // keep only realizable orderings, each disturbed frame counted once
      // with its minimum (dominant-probability) vector
      if (min_v.levels != lv) continue;
      double pv = vector_probability(min_v, weights);
      double dxy = crossover_distance(min_v, weights);
      for (const auto& [delta, info_w] : deltas) {
        BitSeq r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] ^ delta[i];
        if (count_ones(r) != ones_x) continue;  // no mapping to y exists
        double dry = crossover_distance(min_crossover_vector(r, y), weights);
        double tol = 1e-9 * std::max(1.0, dxy);
        if (dxy > dry + tol) {
          acc += info_w * pv;
        } else if (std::abs(dxy - dry) <= tol) {
          acc += 0.5 * info_w * pv;  // distance ties split evenly
        }
      }
    }
    total += acc;
  }
  return total / limits.reference_samples / limits.info_len;
}

}  // namespace mc
