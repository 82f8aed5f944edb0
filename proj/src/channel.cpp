#include "mc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mc/errors.hpp"

namespace mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;
constexpr long kEvalBudget = 40'000'000;

// Integrand of the crossover probability: density of the overtaking
// particle's travel time, times the chance the slot-l successor already
// arrived, times the chance no later successor did. The infinite product
// self-truncates at k*Ts >= u. Accumulated in log space.
struct CrossoverIntegrand {
  const IgParams& p;
  double ts;
  int level;
  mutable long evals = 0;

  double operator()(double u) const {
    ++evals;
    double acc = ig_log_pdf(u, p);
    if (acc == -kInf) return 0.0;
    double lf = ig_log_cdf(u - level * ts, p);
    if (lf == -kInf) return 0.0;
    acc += lf;
    for (int k = level + 1; k * ts < u; ++k) {
      double cdf = ig_cdf(u - k * ts, p);
      if (cdf >= 1.0) return 0.0;
      acc += std::log1p(-cdf);
      if (acc < -745.0) return 0.0;
    }
    return std::exp(acc);
  }
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const CrossoverIntegrand& f, double a, double b, double fa,
             double fm, double fb, double whole, double eps, int depth) {
  if (f.evals > kEvalBudget) {
    throw NumericalError("crossover_probability: quadrature budget exceeded "
                         "(level " + std::to_string(f.level) + ", T_s " +
                         std::to_string(f.ts) + ")");
  }
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate_piece(const CrossoverIntegrand& f, double a, double b,
                       double eps) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, eps, 40);
}

}  // namespace

void ChannelConfig::validate() const {
  ig.validate();
  if (!(slot_interval > 0.0)) {
    throw ConfigError("slot_interval must be strictly positive");
  }
  if (max_level < 1) throw ConfigError("max_level must be >= 1");
  if (!(truncation_tol > 0.0)) {
    throw ConfigError("truncation_tol must be strictly positive");
  }
}

double CrossoverWeights::log_pc(int level) const {
  return std::log(pc[0]) - weight(level);
}

double crossover_probability(int level, const ChannelConfig& cfg) {
  cfg.validate();
  if (level < 1) throw ConfigError("crossover_probability: level must be >= 1");
  double ts = cfg.slot_interval;
  CrossoverIntegrand f{cfg.ig, ts, level};
  double lo = level * ts;
  double hi = ig_quantile(1.0 - 1e-13, cfg.ig);
  if (hi <= lo) return 0.0;

  // the cdf factors have derivative kinks at multiples of T_s, so each
  // inter-multiple span is integrated separately
  std::vector<double> cuts;
  cuts.push_back(lo);
  for (int k = level + 1; k * ts < hi; ++k) cuts.push_back(k * ts);
  cuts.push_back(hi);

  double coarse = 0.0;
  std::vector<double> piece_coarse(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1], m = 0.5 * (a + b);
    piece_coarse[i] = simpson(f(a), f(m), f(b), b - a);
    coarse += piece_coarse[i];
  }
  if (coarse <= 0.0) return 0.0;

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double eps = std::max(kRelTol * std::abs(piece_coarse[i]),
                          1e-13 * coarse);
    total += integrate_piece(f, cuts[i], cuts[i + 1], eps);
  }
  if (total < 0.0) total = 0.0;
  if (total > 1.0) total = 1.0;
  return total;
}

CrossoverWeights build_weights(const ChannelConfig& cfg) {
  cfg.validate();
  int lmax = cfg.max_level;
  CrossoverWeights out;
  out.pc.resize(static_cast<std::size_t>(lmax) + 1);
  double tail_sum = 0.0;
  for (int l = 1; l <= lmax; ++l) {
    double p = crossover_probability(l, cfg);
    // quadrature underflow at very wide spacing: keep the log finite
    if (!(p > 0.0)) p = std::numeric_limits<double>::min();
    out.pc[static_cast<std::size_t>(l)] = p;
    tail_sum += p;
  }
  if (out.pc.back() > cfg.truncation_tol) {
    throw ConfigError("build_weights: P_c(l_max) = " +
                      std::to_string(out.pc.back()) + " at l_max = " +
                      std::to_string(lmax) +
                      " exceeds the truncation tolerance; raise max_level");
  }
  out.pc[0] = 1.0 - tail_sum;
  out.wc.resize(out.pc.size());
  out.wc[0] = 0.0;
  for (int l = 1; l <= lmax; ++l) {
    auto li = static_cast<std::size_t>(l);
    if (!(out.pc[0] > out.pc[li])) {
      throw ConfigError("build_weights: P_c(0) <= P_c(" + std::to_string(l) +
                        "), weights undefined for this configuration");
    }
    out.wc[li] = std::log(out.pc[0]) - std::log(out.pc[li]);
  }
  out.extension_slope = lmax >= 2
      ? out.wc[static_cast<std::size_t>(lmax)] -
        out.wc[static_cast<std::size_t>(lmax) - 1]
      : out.wc[1];
  if (!(out.extension_slope > 0.0)) {
    // flat tail happens only when the trailing entries hit the underflow
    // floor; any positive slope keeps the extension ordering sound
    out.extension_slope = 1.0;
  }
  return out;
}

CrossoverWeights build_weights_auto(ChannelConfig cfg, int level_cap) {
  cfg.validate();
  // smallest table that makes the truncated tail negligible
  while (crossover_probability(cfg.max_level, cfg) > cfg.truncation_tol) {
    if (cfg.max_level >= level_cap) {
      throw ConfigError("build_weights_auto: tail still above tolerance at "
                        "level cap " + std::to_string(level_cap));
    }
    ++cfg.max_level;
  }
  return build_weights(cfg);
}

BitSeq transmit(const BitSeq& bits, const ChannelConfig& cfg, RandomStream& rng) {
  cfg.validate();
  if (bits.empty()) throw ConfigError("transmit: empty bit sequence");
  const std::size_t n = bits.size();
  std::vector<double> arrival(n);
  for (std::size_t i = 0; i < n; ++i) {
    arrival[i] = static_cast<double>(i) * cfg.slot_interval +
                 ig_sample(rng, cfg.ig);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // stable sort breaks (measure-zero) arrival ties by transmit index
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return arrival[a] < arrival[b];
  });
  BitSeq received(n);
  for (std::size_t j = 0; j < n; ++j) received[j] = bits[order[j]];
  return received;
}

}  // namespace mc
