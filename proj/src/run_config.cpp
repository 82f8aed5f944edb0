#include "mc/run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mc/errors.hpp"

namespace mc {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') {
    throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
  }
  return x;
}

long parse_long(const std::string& key, const std::string& v, int base = 10) {
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, base);
  if (end == v.c_str() || *end != '\0') {
    throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
  }
  return x;
}

double parse_positive(const std::string& key, const std::string& v) {
  double x = parse_double(key, v);
  if (!(x > 0.0)) throw ConfigError("config: " + key + " must be positive");
  return x;
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "uncoded") return Scheme::uncoded;
  if (name == "hamming74") return Scheme::hamming74;
  if (name == "conv_hd") return Scheme::conv_hd;
  if (name == "conv_cd") return Scheme::conv_cd;
  if (name == "conv_lsd") return Scheme::conv_lsd;
  throw ConfigError("config: unknown scheme '" + name + "'");
}

ExperimentConfig RunConfig::experiment() const {
  ExperimentConfig e;
  e.schemes = schemes;
  e.physical = physical;
  e.constraint_length = constraint_length;
  e.generators = generators;
  e.tb_grid = tb_grid;
  e.frames = frames;
  e.info_bits_per_frame = info_bits_per_frame;
  e.base_seed = base_seed;
  e.min_bit_errors = min_bit_errors;
  e.l_max = l_max;
  e.truncation_tol = truncation_tol;
  e.threads = threads;
  e.validate();
  return e;
}

ChannelConfig RunConfig::channel() const {
  DerivedParams d = derive_params(physical);
  return ChannelConfig{d.ig, slot_interval, l_max, truncation_tol};
}

RunConfig parse_run_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    }

    if (key == "temperature_kelvin") {
      cfg.physical.temperature_kelvin = parse_positive(key, value);
    } else if (key == "viscosity") {
      cfg.physical.viscosity = parse_positive(key, value);
    } else if (key == "molecule_radius") {
      cfg.physical.molecule_radius = parse_positive(key, value);
    } else if (key == "distance") {
      cfg.physical.distance = parse_positive(key, value);
    } else if (key == "drift_velocity") {
      cfg.physical.drift_velocity = parse_positive(key, value);
    } else if (key == "slot_interval") {
      cfg.slot_interval = parse_positive(key, value);
    } else if (key == "l_max") {
      cfg.l_max = static_cast<int>(parse_long(key, value));
      if (cfg.l_max < 1) throw ConfigError("config: l_max must be >= 1");
    } else if (key == "truncation_tol") {
      cfg.truncation_tol = parse_positive(key, value);
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const auto& name : split_commas(value)) {
        cfg.schemes.push_back(parse_scheme(name));
      }
      if (cfg.schemes.empty()) throw ConfigError("config: empty schemes list");
    } else if (key == "constraint_length") {
      cfg.constraint_length = static_cast<int>(parse_long(key, value));
    } else if (key == "generators") {
      auto parts = split_commas(value);
      if (parts.size() != 2) {
        throw ConfigError("config: generators needs two octal values");
      }
      cfg.generators[0] = static_cast<std::uint32_t>(parse_long(key, parts[0], 8));
      cfg.generators[1] = static_cast<std::uint32_t>(parse_long(key, parts[1], 8));
    } else if (key == "tb_grid") {
      cfg.tb_grid.clear();
      for (const auto& v : split_commas(value)) {
        cfg.tb_grid.push_back(parse_positive(key, v));
      }
    } else if (key == "frames") {
      cfg.frames = parse_long(key, value);
    } else if (key == "info_bits_per_frame") {
      cfg.info_bits_per_frame = static_cast<int>(parse_long(key, value));
    } else if (key == "base_seed") {
      cfg.base_seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "min_bit_errors") {
      cfg.min_bit_errors = parse_long(key, value);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_long(key, value));
    } else if (key == "approx_info_len") {
      cfg.approx_info_len = static_cast<int>(parse_long(key, value));
    } else if (key == "approx_max_level") {
      cfg.approx_max_level = static_cast<int>(parse_long(key, value));
    } else if (key == "approx_max_crossovers") {
      cfg.approx_max_crossovers = static_cast<int>(parse_long(key, value));
    } else if (key == "approx_reference_samples") {
      cfg.approx_reference_samples = static_cast<int>(parse_long(key, value));
    } else {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config_text(buf.str());
}

}  // namespace mc
