// Experiment runner: crossover probability tables, crossover distances,
// Monte Carlo BER sweeps and the analytical BER approximation.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mc/analysis.hpp"
#include "mc/crossover.hpp"
#include "mc/errors.hpp"
#include "mc/run_config.hpp"
#include "mc/svg.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// fixed 12-significant-digit scientific notation, locale independent
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw mc::ConfigError("cannot open output path " + path);
  return file;
}

mc::RunConfig load_config(const std::string& path, std::optional<long> seed) {
  mc::RunConfig cfg = path.empty() ? mc::RunConfig{} : mc::parse_run_config(path);
  if (seed) cfg.base_seed = static_cast<std::uint64_t>(*seed);
  return cfg;
}

mc::BitSeq parse_bits(const std::string& s) {
  mc::BitSeq out;
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw mc::ConfigError("bit strings must consist of 0 and 1 only");
    }
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (out.empty()) throw mc::ConfigError("empty bit string");
  return out;
}

int cmd_pc(const mc::RunConfig& cfg, const std::string& out_path) {
  mc::CrossoverWeights w = mc::build_weights_auto(cfg.channel());
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "l,p_c,w_c\n";
  for (int l = 0; l <= w.max_level(); ++l) {
    out << l << "," << fmt(w.pc[static_cast<std::size_t>(l)]) << ","
        << fmt(w.wc[static_cast<std::size_t>(l)]) << "\n";
  }
  return 0;
}

int cmd_distance(const mc::RunConfig& cfg, bool have_config,
                 const std::string& xs, const std::string& ys,
                 const std::string& out_path) {
  mc::BitSeq x = parse_bits(xs), y = parse_bits(ys);
  mc::CrossoverVector v = mc::min_crossover_vector(x, y);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "levels:";
  for (int l : v.levels) out << " " << l;
  out << "\nsum: " << v.sum() << "\nmax: " << v.max()
      << "\nlevel_sum_distance: " << mc::level_sum_distance(v) << "\n";
  if (have_config) {
    mc::CrossoverWeights w = mc::build_weights_auto(cfg.channel());
    out << "crossover_distance: " << fmt(mc::crossover_distance(v, w)) << "\n";
  }
  return 0;
}

int cmd_sweep(const mc::RunConfig& cfg, const std::string& out_path,
              const std::string& svg_path) {
  std::vector<mc::BerPoint> points = mc::sweep(cfg.experiment());
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "scheme,metric,tb_seconds,frames,bits,bit_errors,decode_failures,ber,stderr\n";
  for (const auto& p : points) {
    out << mc::scheme_name(p.scheme) << "," << mc::scheme_metric_name(p.scheme)
        << "," << fmt(p.tb_seconds) << "," << p.frames << "," << p.bits_sent
        << "," << p.bit_errors << "," << p.decode_failures << ","
        << fmt(p.ber()) << "," << fmt(p.stderr_estimate()) << "\n";
  }
  if (!svg_path.empty()) mc::write_ber_svg(svg_path, points);
  return 0;
}

int cmd_approx(const mc::RunConfig& cfg, const std::string& out_path) {
  mc::CodeSet cs = mc::build_code(cfg.constraint_length, cfg.generators);
  mc::DerivedParams d = mc::derive_params(cfg.physical);
  mc::ChannelConfig channel{d.ig, 1.0, cfg.l_max, cfg.truncation_tol};
  mc::ApproxLimits limits{cfg.approx_info_len, cfg.approx_max_level,
                          cfg.approx_max_crossovers, cfg.approx_reference_samples};
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "scheme,tb_seconds,ber_approx\n";
  for (double tb : cfg.tb_grid) {
    double p = mc::approx_ber(cs, channel, tb, limits, cfg.base_seed);
    out << "conv_cd," << fmt(tb) << "," << fmt(p) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossover-distance channel coding experiments for the "
               "diffusion MoSK channel"};
  app.require_subcommand(1);

  std::string config_path, out_path, svg_path;
  std::optional<long> seed;
  std::string x_str, y_str;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--seed", seed, "override base_seed");
  };

  CLI::App* pc = app.add_subcommand("pc", "crossover probability / weight table");
  add_common(pc);
  CLI::App* distance = app.add_subcommand("distance", "crossover distance of two bit strings");
  add_common(distance);
  distance->add_option("x", x_str, "transmitted bit string")->required();
  distance->add_option("y", y_str, "received bit string")->required();
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo BER sweep");
  add_common(sweep);
  sweep->add_option("--svg", svg_path, "also emit a BER chart");
  CLI::App* approx = app.add_subcommand("approx", "analytical BER approximation");
  add_common(approx);

  CLI11_PARSE(app, argc, argv);

  try {
    mc::RunConfig cfg = load_config(config_path, seed);
    if (pc->parsed()) return cmd_pc(cfg, out_path);
    if (distance->parsed()) {
      return cmd_distance(cfg, !config_path.empty(), x_str, y_str, out_path);
    }
    if (sweep->parsed()) return cmd_sweep(cfg, out_path, svg_path);
    if (approx->parsed()) return cmd_approx(cfg, out_path);
  } catch (const mc::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const mc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mc::CompositionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
