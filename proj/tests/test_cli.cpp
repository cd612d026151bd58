#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DIFFLAB_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 512> buf{};
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: passing run exits 0 and writes the report files") {
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/difflab_cli_ok";
  fs::remove_all(dir);
  const CliResult r =
      run_cli("clt --set replicates=1000 --set t=20 --seed 4 -o " + dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"all_criteria_passed\": true") != std::string::npos);
  CHECK(fs::exists(dir + "/clt_4.json"));
  CHECK(fs::exists(dir + "/clt_4.csv"));
  fs::remove_all(dir);
}

TEST_CASE("cli: config errors exit 1 and name the precondition") {
  const CliResult r = run_cli("clt --set dt=-0.5 -o /tmp/difflab_cli_err");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("dt > 0") != std::string::npos);
}

TEST_CASE("cli: criteria failure exits 2 (over-smoothing negative control)") {
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/difflab_cli_fail";
  fs::remove_all(dir);
  const CliResult r = run_cli(
      "clt-smoothed --set replicates=300 --set t=10 --set h=1.0 --set g=x1sq "
      "--set support_half=4.5 -o " +
      dir);
  CHECK(r.exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: missing seed defaults to 0 and is echoed") {
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/difflab_cli_seed";
  fs::remove_all(dir);
  const CliResult r = run_cli("simulate --set t=2 -o " + dir);
  CHECK(r.exit_code == 0);
  const std::string json = slurp(dir + "/simulate_0.json");
  CHECK(json.find("\"seed\": 0") != std::string::npos);
  CHECK(json.find("\"seed_given\": false") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: reruns are byte-identical") {
  namespace fs = std::filesystem;
  const std::string dir_a = "/tmp/difflab_cli_rep_a", dir_b = "/tmp/difflab_cli_rep_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  const std::string args = "clt --set replicates=250 --set t=20 --seed 11 -o ";
  const int code_a = run_cli(args + dir_a).exit_code;
  const int code_b = run_cli(args + dir_b).exit_code;
  CHECK(code_a == code_b);  // determinism covers the exit status too
  CHECK((code_a == 0 || code_a == 2));
  CHECK(slurp(dir_a + "/clt_11.json") == slurp(dir_b + "/clt_11.json"));
  CHECK(slurp(dir_a + "/clt_11.csv") == slurp(dir_b + "/clt_11.csv"));
  CHECK(!slurp(dir_a + "/clt_11.json").empty());
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("cli: DIFFLAB_OUT_DIR environment override") {
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/difflab_cli_env";
  fs::remove_all(dir);
  const std::string cmd = "DIFFLAB_OUT_DIR=" + dir + " " + std::string(DIFFLAB_CLI_PATH) +
                          " simulate --set t=2 --seed 3 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 256> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) {
  }
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir + "/simulate_3.bin"));
  fs::remove_all(dir);
}

TEST_CASE("cli: config file plus overrides") {
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/difflab_cli_cfg";
  const std::string cfg = "/tmp/difflab_cli_cfg.txt";
  fs::remove_all(dir);
  {
    std::ofstream out(cfg);
    out << "# smoke config\nt = 8\ndim = 2\n";
  }
  const CliResult r = run_cli("simulate -c " + cfg + " --set t=12 --seed 6 -o " + dir);
  CHECK(r.exit_code == 0);
  const std::string json = slurp(dir + "/simulate_6.json");
  CHECK(json.find("\"t\": 12.0") != std::string::npos);  // override wins
  CHECK(json.find("\"dim\": 2") != std::string::npos);
  fs::remove_all(dir);
  fs::remove(cfg);
}

TEST_CASE("cli: unknown subcommand or missing subcommand exits nonzero") {
  CHECK(run_cli("frobnicate").exit_code != 0);
  CHECK(run_cli("").exit_code != 0);
}
