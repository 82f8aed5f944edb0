#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

std::string mcrun_path() {
  const char* p = std::getenv("MCRUN");
  REQUIRE_MESSAGE(p != nullptr, "MCRUN must point at the mcrun binary");
  return p;
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  std::string out_path = "/tmp/mcrun_test_out.txt";
  std::string err_path = "/tmp/mcrun_test_err.txt";
  std::string cmd = mcrun_path() + " " + args + " >" + out_path + " 2>" + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

// 12 significant digits of scientific notation: d.ddddddddddde[+-]dd
bool is_sci12(const std::string& s) {
  std::size_t e = s.find('e');
  if (e == std::string::npos) return false;
  std::size_t start = s[0] == '-' ? 1 : 0;
  return s.find('.') == start + 1 && e == start + 13;
}

}  // namespace

TEST_CASE("pc table output") {
  RunResult r = run("pc");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 10);
  CHECK(lines[0] == "l,p_c,w_c");
  // row 0: level, P_c(0), weight 0
  std::stringstream row0(lines[1]);
  std::string l, pc0, wc0;
  std::getline(row0, l, ',');
  std::getline(row0, pc0, ',');
  std::getline(row0, wc0, ',');
  CHECK(l == "0");
  CHECK(is_sci12(pc0));
  CHECK(std::stod(wc0) == 0.0);
  // probabilities sum to one
  double sum = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream row(lines[i]);
    std::string f;
    std::getline(row, f, ',');
    std::getline(row, f, ',');
    sum += std::stod(f);
  }
  CHECK(std::abs(sum - 1.0) < 1e-9);
}

TEST_CASE("pc honors --out") {
  std::string path = "/tmp/mcrun_pc.csv";
  std::remove(path.c_str());
  RunResult r = run("pc --out " + path);
  CHECK(r.exit_code == 0);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "l,p_c,w_c");
}

TEST_CASE("distance of the worked example") {
  RunResult r = run("distance 0100010 0001100");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 4);
  CHECK(lines[0] == "levels: 0 2 0 0 1 0 0");
  CHECK(lines[1] == "sum: 3");
  CHECK(lines[2] == "max: 2");
  CHECK(lines[3] == "level_sum_distance: 3");
}

TEST_CASE("distance composition failure exits with code 2") {
  RunResult r = run("distance 01 00");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("sequences differ in bit composition") != std::string::npos);
}

TEST_CASE("unknown config key exits with code 2") {
  write_file("/tmp/mcrun_bad.cfg", "no_such_key = 1\n");
  RunResult r = run("sweep --config /tmp/mcrun_bad.cfg");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("unknown key") != std::string::npos);
}

TEST_CASE("sweep output schema, determinism, and svg") {
  write_file("/tmp/mcrun_sweep.cfg",
             "schemes = uncoded, conv_hd\n"
             "tb_grid = 1, 2\n"
             "frames = 32\n"
             "info_bits_per_frame = 32\n"
             "min_bit_errors = 100000\n"
             "base_seed = 5\n");
  RunResult r1 = run("sweep --config /tmp/mcrun_sweep.cfg --svg /tmp/mcrun_sweep.svg");
  CHECK(r1.exit_code == 0);
  auto lines = lines_of(r1.out);
  REQUIRE(lines.size() == 5);  // header + 2 schemes x 2 points
  CHECK(lines[0] ==
        "scheme,metric,tb_seconds,frames,bits,bit_errors,decode_failures,ber,stderr");
  CHECK(lines[1].rfind("uncoded,none,", 0) == 0);
  CHECK(lines[3].rfind("conv_hd,hamming,", 0) == 0);

  RunResult r2 = run("sweep --config /tmp/mcrun_sweep.cfg");
  CHECK(r2.out == r1.out);  // byte identical rerun

  std::ifstream svg("/tmp/mcrun_sweep.svg");
  std::stringstream ss;
  ss << svg.rdbuf();
  CHECK(ss.str().find("<svg") != std::string::npos);
  CHECK(ss.str().find("polyline") != std::string::npos);
}

TEST_CASE("seed override changes the sweep") {
  write_file("/tmp/mcrun_seed.cfg",
             "schemes = uncoded\n"
             "tb_grid = 1\n"
             "frames = 32\n"
             "info_bits_per_frame = 64\n"
             "min_bit_errors = 100000\n");
  RunResult a = run("sweep --config /tmp/mcrun_seed.cfg --seed 1");
  RunResult b = run("sweep --config /tmp/mcrun_seed.cfg --seed 2");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out != b.out);
}

TEST_CASE("approx output schema") {
  write_file("/tmp/mcrun_approx.cfg",
             "tb_grid = 2\n"
             "approx_info_len = 4\n"
             "approx_max_level = 2\n"
             "approx_max_crossovers = 2\n"
             "approx_reference_samples = 2\n");
  RunResult r = run("approx --config /tmp/mcrun_approx.cfg");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "scheme,tb_seconds,ber_approx");
  CHECK(lines[1].rfind("conv_cd,", 0) == 0);
  std::stringstream row(lines[1]);
  std::string f;
  std::getline(row, f, ',');
  std::getline(row, f, ',');
  CHECK(is_sci12(f));
}
