#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "specloc/commands.hpp"
#include "specloc/io.hpp"
#include "specloc/models.hpp"

using namespace specloc;
namespace fs = std::filesystem;

namespace {

RunConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return RunConfig::from_stream(in);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "specloc_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// The sweep gap column is compared against the infinite-volume bound, which
// a small box undercuts; ell = 20 keeps the run in the verified regime.
const char* kSshConfig = R"(# ssh run
[model]
name = ssh
v = 0.4
w = 1.0
[localizer]
ell = 20
kappa = 0.1
mu = 1.0
probe_ell = 60
kappa_points = 13
[run]
seeds = 1
)";

}  // namespace

TEST_CASE("config parsing fills defaults and rejects unknown keys") {
  const RunConfig c = config_from(kSshConfig);
  CHECK(c.model_name == "ssh");
  CHECK(c.v == 0.4);
  CHECK(c.ell == 20);
  CHECK(c.effective_outer_ell() == 40);
  CHECK(c.effective_margin() == 5);

  CHECK_THROWS_WITH_AS(config_from("[model]\nname = ssh\nvv = 0.4\n"),
                       doctest::Contains("unknown key: model.vv"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from("[model]\nname = ssh\n[localizer]\nell = x\n"),
                       doctest::Contains("localizer.ell"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from("[model]\nname = hubbard\n"), doctest::Contains("model.name"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(config_from("[model]\nname = ssh\n[localizer]\nkappa = 1.5\n"),
                       doctest::Contains("localizer.kappa"), ConfigError);
}

TEST_CASE("operator dump round-trips exactly") {
  const auto h = make_ssh(0.4, 1.0, 0.1, 5).build(LatticeBox(1, 6));
  std::stringstream ss;
  dump_operator(ss, h);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "1 2 6 1 1");
  ss.seekg(0);
  const auto back = read_operator(ss);
  CHECK(back.internal_dim() == 2);
  CHECK(back.hermitian());
  CHECK(back.chiral());
  CHECK((back.matrix() - h.matrix()).cwiseAbs().maxCoeff() == 0.0);

  std::istringstream bad("1 2\n");
  CHECK_THROWS_WITH_AS(read_operator(bad), doctest::Contains("malformed"), std::runtime_error);
  std::istringstream oob("1 1 1 0 0\n99 0 1 0\n");
  CHECK_THROWS_WITH_AS(read_operator(oob), doctest::Contains("out of range"), std::runtime_error);
}

TEST_CASE("sig command matches the oracle and writes its record") {
  RunConfig c = config_from(kSshConfig);
  const auto dir = fresh_dir("sig");
  c.out_dir = dir.string();
  CHECK(cmd_sig(c) == 0);
  CHECK(fs::exists(dir / "sig.json"));
  const std::string json = read_file(dir / "sig.json");
  CHECK(json.find("\"half_signature\": 1") != std::string::npos);
  CHECK(json.find("probe-box estimates") != std::string::npos);
}

TEST_CASE("sig command signals a certified mismatch") {
  // a box too small for this kappa: the run certifies but the half-signature
  // misses the winding
  RunConfig c = config_from(R"(
[model]
name = ssh
v = 0.4
w = 1.0
[localizer]
ell = 4
kappa = 0.7
mu = 1.0
probe_ell = 40
[run]
seeds = 1
)");
  CHECK(cmd_sig(c) == 1);
}

TEST_CASE("sig command flags the endpoint") {
  RunConfig c = config_from(kSshConfig);
  c.kappa = 1.0;
  const auto dir = fresh_dir("sig_endpoint");
  c.out_dir = dir.string();
  CHECK(cmd_sig(c) == 0);
  CHECK(read_file(dir / "sig.json").find("endpoint") != std::string::npos);
}

TEST_CASE("sweep command emits the documented schema, deterministically") {
  RunConfig c = config_from(kSshConfig);
  const auto dir1 = fresh_dir("sweep1");
  const auto dir2 = fresh_dir("sweep2");
  c.out_dir = dir1.string();
  CHECK(cmd_sweep(c) == 0);
  c.out_dir = dir2.string();
  c.workers = 2;
  CHECK(cmd_sweep(c) == 0);

  const std::string a = read_file(dir1 / "sweep.csv");
  const std::string b = read_file(dir2 / "sweep.csv");
  CHECK(a == b);  // parallelism never changes output bytes
  std::istringstream in(a);
  std::string header;
  std::getline(in, header);
  CHECK(header == "kappa,n_plus,n_minus,n_zero,signature,min_abs_eig,gap_lower_bound");
  int rows = 0;
  std::string last;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    last = line;
  }
  CHECK(rows == 13);
  // final grid point is the endpoint kappa = 1 with signature zero
  CHECK(last.substr(0, 2) == "1,");
  CHECK(last.find(",0,") != std::string::npos);
}

TEST_CASE("phase command scans the qwz masses") {
  RunConfig c = config_from(R"(
[model]
name = qwz
[localizer]
ell = 5
kappa = 0.1
mu = 1.0
probe_ell = 8
[invariants]
nk_chern = 32
[phase]
param = m
from = -3
to = 3
points = 4
[run]
seeds = 1
)");
  const auto dir = fresh_dir("phase");
  c.out_dir = dir.string();
  CHECK(cmd_phase(c) == 0);
  const std::string csv = read_file(dir / "phase.csv");
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "m,half_signature,oracle,pre_rounding,certified,match");
  // grid -3, -1, 1, 3 -> oracle 0, -1, 1, 0
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].find(",0,0,") != std::string::npos);
  CHECK(rows[1].find(",-1,-1,") != std::string::npos);
  CHECK(rows[2].find(",1,1,") != std::string::npos);
  CHECK(rows[3].find(",0,0,") != std::string::npos);
}

TEST_CASE("phase command scans the ssh hoppings") {
  RunConfig c = config_from(R"(
[model]
name = ssh
w = 1.0
[localizer]
ell = 16
kappa = 0.1
mu = 1.0
probe_ell = 60
[phase]
param = v
from = 0.3
to = 1.8
points = 4
[run]
seeds = 1
)");
  const auto dir = fresh_dir("phase_ssh");
  c.out_dir = dir.string();
  CHECK(cmd_phase(c) == 0);
  std::istringstream in(read_file(dir / "phase.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "v,half_signature,oracle,pre_rounding,certified,match");
  // winding is 1 exactly when v < w = 1: grid 0.3, 0.8, 1.3, 1.8
  std::vector<int> expected = {1, 1, 0, 0};
  for (int want : expected) {
    REQUIRE(std::getline(in, line));
    CHECK(line.find("," + std::to_string(want) + "," + std::to_string(want) + ",") !=
          std::string::npos);
  }
}

TEST_CASE("phase command rejects an empty grid") {
  RunConfig c = config_from(kSshConfig);
  CHECK(cmd_phase(c) == 2);  // no phase section configured
}

TEST_CASE("verify command exit codes") {
  RunConfig c = config_from(R"(
[model]
name = ssh
v = 0.4
w = 1.0
[verify]
draws = 2
dim_budget = 10
seed = 3
)");
  const auto dir = fresh_dir("verify");
  c.out_dir = dir.string();
  CHECK(cmd_verify_bounds(c) == 0);
  const std::string csv = read_file(dir / "bounds.csv");
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "lemma,lhs,rhs,margin,pass");

  c.verify_draws = 0;
  CHECK(cmd_verify_bounds(c) == 2);
  c.verify_draws = 1;
  c.verify_budget_c = 1e-6;  // deliberately violated budget
  CHECK(cmd_verify_bounds(c) == 2);
}

TEST_CASE("oracle command cross-checks the invariants") {
  RunConfig c = config_from(R"(
[model]
name = ssh
v = 0.4
w = 1.0
[localizer]
ell = 30
[invariants]
margin = 8
[run]
seeds = 1
)");
  const auto dir = fresh_dir("oracle");
  c.out_dir = dir.string();
  CHECK(cmd_oracle(c) == 0);
  const std::string csv = read_file(dir / "oracle.csv");
  CHECK(csv.find("kspace-winding,1,") != std::string::npos);
  CHECK(csv.find("realspace-winding,1,") != std::string::npos);
  CHECK(fs::exists(dir / "kubo_integrand.csv"));
  const std::string kubo = read_file(dir / "kubo_integrand.csv");
  CHECK(kubo.substr(0, 16) == "kappa,integrand\n");
}

TEST_CASE("dump command writes the documented format") {
  RunConfig c = config_from(kSshConfig);
  const auto dir = fresh_dir("dump");
  c.out_dir = dir.string();
  CHECK(cmd_dump(c) == 0);
  std::ifstream in(dir / "operator.txt");
  REQUIRE(in.good());
  const auto op = read_operator(in);
  CHECK(op.box().radius() == 20);
  CHECK(op.chiral());
}
