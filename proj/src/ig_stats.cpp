#include "mc/ig_stats.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mc/errors.hpp"

namespace mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw ConfigError(std::string(name) + " must be strictly positive");
  }
}

double log_sum_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double m = a > b ? a : b;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

void PhysicalConfig::validate() const {
  require_positive(temperature_kelvin, "temperature_kelvin");
  require_positive(viscosity, "viscosity");
  require_positive(molecule_radius, "molecule_radius");
  require_positive(distance, "distance");
  require_positive(drift_velocity, "drift_velocity");
}

void IgParams::validate() const {
  require_positive(mu, "mu");
  require_positive(lambda, "lambda");
}

DerivedParams derive_params(const PhysicalConfig& cfg) {
  cfg.validate();
  double diffusion = kBoltzmann * cfg.temperature_kelvin /
                     (6.0 * std::numbers::pi * cfg.viscosity * cfg.molecule_radius);
  DerivedParams out;
  out.diffusion_coefficient = diffusion;
  out.ig.mu = cfg.distance / cfg.drift_velocity;
  out.ig.lambda = cfg.distance * cfg.distance / (2.0 * diffusion);
  return out;
}

double ig_log_pdf(double t, const IgParams& p) {
  if (!(t > 0.0)) return -kInf;
  double dev = t - p.mu;
  return 0.5 * std::log(p.lambda) - kLogSqrt2Pi - 1.5 * std::log(t) -
         p.lambda * dev * dev / (2.0 * p.mu * p.mu * t);
}

double ig_pdf(double t, const IgParams& p) {
  if (!(t > 0.0)) return 0.0;
  return std::exp(ig_log_pdf(t, p));
}

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double std_normal_log_cdf(double z) {
  // erfc stays normal down to z ~ -37; take its log directly there
  if (z > -35.0) {
    return std::log(std_normal_cdf(z));
  }
  // Mills-ratio asymptotic expansion, relative error < 1e-16 for z <= -35
  double z2 = z * z;
  double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2) +
                  105.0 / (z2 * z2 * z2 * z2);
  return -0.5 * z2 - kLogSqrt2Pi - std::log(-z) + std::log(series);
}

double ig_log_cdf(double t, const IgParams& p) {
  if (!(t > 0.0)) return -kInf;
  double s = std::sqrt(p.lambda / t);
  double a = s * (t / p.mu - 1.0);
  double b = -s * (t / p.mu + 1.0);
  double log_first = std_normal_log_cdf(a);
  double log_second = 2.0 * p.lambda / p.mu + std_normal_log_cdf(b);
  double lc = log_sum_exp(log_first, log_second);
  return lc > 0.0 ? 0.0 : lc;
}

double ig_cdf(double t, const IgParams& p) {
  if (!(t > 0.0)) return 0.0;
  double c = std::exp(ig_log_cdf(t, p));
  return c > 1.0 ? 1.0 : c;
}

double ig_quantile(double prob, const IgParams& p) {
  p.validate();
  if (!(prob > 0.0 && prob < 1.0)) {
    throw ConfigError("ig_quantile: prob must lie in (0,1)");
  }
  double hi = p.mu;
  while (ig_cdf(hi, p) < prob) {
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("ig_quantile: bracket overflow");
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (ig_cdf(mid, p) < prob ? lo : hi) = mid;
  }
  return hi;
}

double ig_sample(RandomStream& rng, const IgParams& p) {
  double z = rng.normal();
  double nu = z * z;
  double mu = p.mu, lam = p.lambda;
  double x = mu + mu * mu * nu / (2.0 * lam) -
             mu / (2.0 * lam) * std::sqrt(4.0 * mu * lam * nu + mu * mu * nu * nu);
  if (x <= 0.0) x = std::numeric_limits<double>::min();  // roundoff guard
  double u = rng.uniform();
  if (u <= mu / (mu + x)) return x;
  return mu * mu / x;
}

}  // namespace mc
