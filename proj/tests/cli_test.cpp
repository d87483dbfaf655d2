// Runs the abring executable end to end.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "abring_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome run(const std::string& args) {
  const fs::path err_file = scratch_dir() / "stderr.txt";
  const std::string cmd =
      std::string("'") + ABRING_CLI_PATH + "' " + args + " 2>'" + err_file.string() + "'";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err_file);
  return r;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(Cli, ShowConfigForPreset) {
  const Outcome r = run("show-config --preset fig1");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("regime = relativistic"), std::string::npos);
  EXPECT_NE(r.out.find("flux_ratio = 50,100,150,200"), std::string::npos);
}

TEST(Cli, ZeroTauMinIsAValidationError) {
  const Outcome r = run("sweep --preset fig1 --tau-min 0");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("tau_min"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, RepeatedFluxRatiosAccumulate) {
  const Outcome r = run("sweep --preset fig1 --flux-ratio 50 --flux-ratio 100 --tau-steps 2");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(line_count(r.out), 5u);
  EXPECT_NE(r.out.find("\nrelativistic,high-t,derived,100,"), std::string::npos);
  const Outcome listed = run("sweep --preset fig1 --flux-ratio 50,100 --tau-steps 2");
  EXPECT_EQ(listed.out, r.out);
}

TEST(Cli, SweepToFileIsDeterministic) {
  const fs::path a = scratch_dir() / "a.csv";
  const fs::path b = scratch_dir() / "b.csv";
  ASSERT_EQ(run("sweep --preset fig2 --out '" + a.string() + "'").status, 0);
  ASSERT_EQ(run("sweep --preset fig2 --out '" + b.string() + "'").status, 0);
  const std::string text = slurp(a);
  EXPECT_EQ(line_count(text), 801u);
  EXPECT_EQ(text, slurp(b));
}

TEST(Cli, ConfigFileIsLayeredUnderFlags) {
  const fs::path cfg = scratch_dir() / "run.cfg";
  std::ofstream(cfg) << "preset = fig2\nflux_ratio = 75\ntau_steps = 9\n";
  const Outcome r = run("show-config --config '" + cfg.string() + "' --tau-steps 4");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("regime = nonrelativistic"), std::string::npos);
  EXPECT_NE(r.out.find("flux_ratio = 75\n"), std::string::npos);
  EXPECT_NE(r.out.find("tau_steps = 4\n"), std::string::npos);
}

TEST(Cli, PointPrintsOneRow) {
  const Outcome r = run("point --preset fig2 --flux-ratio 50 --tau 1000");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(line_count(r.out), 2u);
  EXPECT_NE(r.out.find("nonrelativistic,geometric,derived,50,1000,"), std::string::npos);
  EXPECT_EQ(run("point --preset fig2 --tau 1000").status, 1);
}

TEST(Cli, CompareDefaults) {
  const Outcome r = run("compare --preset fig2 --flux-ratio 50 --tau-min 1 --tau-max 10 --tau-steps 2");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("regime,fidelity,phi,tau,beta,lnZ1_direct,lnZ1_geometric,", 0), 0u);
  EXPECT_EQ(run("compare --preset fig1 --methods direct,geometric").status, 1);
}

TEST(Cli, FailedRowsExitWithTwo) {
  const Outcome r = run(
      "sweep --preset fig1 --method direct --max-terms 20 --flux-ratio 50 --tau-min 0.05 "
      "--tau-max 100 --tau-steps 2");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("NonConvergence"), std::string::npos);
  EXPECT_NE(r.err.find("1 of 2 rows failed"), std::string::npos) << r.err;
}

TEST(Cli, ZeroFluxWarnsOnStderr) {
  const Outcome r = run("point --preset fig1 --method direct --flux-ratio 0 --tau 1");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("warning:"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("sweep --no-such-flag").status, 1);
  EXPECT_EQ(run("sweep --preset fig9").status, 1);
  EXPECT_EQ(run("sweep --help").status, 0);
}

}  // namespace
