#ifndef MC_IG_STATS_HPP
#define MC_IG_STATS_HPP

#include "mc/random.hpp"

namespace mc {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K (CODATA)

// Physical constants of the drifted diffusion link.
struct PhysicalConfig {
  double temperature_kelvin;  // K
  double viscosity;           // Pa*s
  double molecule_radius;     // m
  double distance;            // m, transmitter to receiver
  double drift_velocity;      // m/s, must be > 0 so arrival is a.s. finite

  void validate() const;  // throws ConfigError on non-positive fields
};

// Inverse-Gaussian first-hitting-time parameters.
struct IgParams {
  double mu;      // s, mean travel time
  double lambda;  // s, shape

  void validate() const;
};

struct DerivedParams {
  IgParams ig;
  double diffusion_coefficient;  // m^2/s
};

// Stokes-Einstein diffusion coefficient and the travel-time law it induces:
// D = kB*T / (6 pi eta r), mu = d/v, lambda = d^2/(2D).
DerivedParams derive_params(const PhysicalConfig& cfg);

// Density of IG(mu, lambda); 0 for t <= 0.
double ig_pdf(double t, const IgParams& p);
double ig_log_pdf(double t, const IgParams& p);  // -inf outside the support

// Closed-form cdf; the exp(2*lambda/mu)*Phi(.) product is evaluated in log
// space so large lambda/mu does not overflow.
double ig_cdf(double t, const IgParams& p);
double ig_log_cdf(double t, const IgParams& p);

// Smallest t with ig_cdf(t) >= prob, by bracketing and bisection.
double ig_quantile(double prob, const IgParams& p);

// Standard normal cdf and its log (asymptotic tail expansion for z << 0).
double std_normal_cdf(double z);
double std_normal_log_cdf(double z);

// One draw from IG(mu, lambda), Michael-Schucany-Haas transformation.
double ig_sample(RandomStream& rng, const IgParams& p);

}  // namespace mc

#endif
