#ifndef MC_RUN_CONFIG_HPP
#define MC_RUN_CONFIG_HPP

#include <string>

#include "mc/analysis.hpp"

namespace mc {

// Line-oriented `key = value` experiment configuration with `#` comments.
// Defaults are the reference physical parameters of the simulated link.
struct RunConfig {
  PhysicalConfig physical{298.0, 0.894e-3, 10e-9, 10e-6, 10e-6};
  double slot_interval = 1.0;  // T_s for the pc/distance commands
  int l_max = 8;
  double truncation_tol = 1e-10;

  std::vector<Scheme> schemes{Scheme::uncoded, Scheme::conv_cd};
  int constraint_length = 3;
  std::array<std::uint32_t, 2> generators{05, 07};
  std::vector<double> tb_grid{0.5, 1.0, 2.0, 4.0};
  long frames = 20000;
  int info_bits_per_frame = 64;
  std::uint64_t base_seed = 1;
  long min_bit_errors = 200;
  int threads = 0;

  int approx_info_len = 6;
  int approx_max_level = 3;
  int approx_max_crossovers = 3;
  int approx_reference_samples = 8;

  ExperimentConfig experiment() const;
  ChannelConfig channel() const;  // slot_interval-based, for pc/distance
};

// Throws ConfigError on unknown keys, malformed lines, or invalid values.
RunConfig parse_run_config(const std::string& path);
RunConfig parse_run_config_text(const std::string& text);

Scheme parse_scheme(const std::string& name);

}  // namespace mc

#endif
