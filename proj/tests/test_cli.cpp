#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + TWOSTATE_CLI_PATH + " " + args + " 2>&1";
  Outcome r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_config(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("twostate_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, SimulatePrintsProbability) {
  const Outcome r = run("simulate --protocol RE --alpha 0.9");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("P 0.97552825814"), std::string::npos) << r.out;
}

TEST(Cli, FlagOverridesConfigFile) {
  const std::string cfg = write_config("override.cfg", "protocol = RE\nalpha = 0.5\n");
  const Outcome from_file = run("simulate -c " + cfg);
  EXPECT_NE(from_file.out.find("P 0.5"), std::string::npos) << from_file.out;
  const Outcome overridden = run("simulate -c " + cfg + " --alpha 1");
  EXPECT_NE(overridden.out.find("P 1\n"), std::string::npos) << overridden.out;
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("simulate --protocol RE --sigma 1.5").code, 2);
  const std::string cfg = write_config("typo.cfg", "protocol = RE\nomega_zero = 1\n");
  const Outcome r = run("simulate -c " + cfg);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("omega0"), std::string::npos) << r.out;
  EXPECT_EQ(run("sweep --protocol RE").code, 2);
  EXPECT_EQ(run("simulate --no-such-flag").code, 2);
}

TEST(Cli, NumericalFailureExitsThree) {
  EXPECT_EQ(run("simulate --protocol AF --steps_per_pulse 100 --convergence_tol 1e-12").code, 3);
}

TEST(Cli, IoFailureExitsFour) {
  EXPECT_EQ(run("simulate -c /nonexistent/run.cfg").code, 4);
  EXPECT_EQ(run("simulate --protocol RE --output /nonexistent/dir/out.txt").code, 4);
}

TEST(Cli, SweepCsvToStdout) {
  const Outcome r = run(
      "sweep --protocol RE --axis1_channel alpha --axis1_lo 0 --axis1_hi 2 --axis1_points 5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.substr(0, 9), "alpha,P\r\n");
}

TEST(Cli, WorkerEnvironmentDoesNotChangeOutput) {
  const std::string args =
      "sweep --protocol CAP --axis1_channel delta --axis1_lo -1 --axis1_hi 1 --axis1_points 9";
  const Outcome serial = run(args, "PULSE_WORKERS=1");
  const Outcome pooled = run(args, "PULSE_WORKERS=4");
  EXPECT_EQ(serial.code, 0);
  EXPECT_EQ(serial.out, pooled.out);
}

TEST(Cli, SweepWritesFilesAndScript) {
  const auto dir = std::filesystem::temp_directory_path() / "twostate_cli_out";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "s_{protocol}.json").string();
  const std::string plot = (dir / "s_{protocol}.gp").string();
  const Outcome r = run("sweep --protocol RE,UCP --axis1_channel sigma --axis1_lo -0.5 --axis1_hi 0.5 "
                    "--axis1_points 3 --format json --output '" + out + "' --gnuplot '" + plot + "'");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "s_RE.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "s_UCP.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "s_UCP.gp"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, CheckPasses) {
  const Outcome r = run("check");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, Version) {
  const Outcome r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
}
