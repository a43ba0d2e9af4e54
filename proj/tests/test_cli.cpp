#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MIRRORQED_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string header_row(const std::string& csv) {
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') return line;
  return {};
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::vector<std::string> rows;
  bool header = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mirrorqed_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, ExcitationColumnsAndMetadata) {
  const auto r = run("excitation --tau 0.01 --phase 3.141592653589793 --rm -1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(header_row(r.output), "t,P_exact,P_longtime,P_markovian");
  EXPECT_EQ(data_rows(r.output).size(), 2001u);
  EXPECT_NE(r.output.find("\"command\": \"excitation\""), std::string::npos);
  EXPECT_NE(r.output.find("\"available\": true"), std::string::npos);
}

TEST(Cli, LongtimeColumnDroppedWithReason) {
  const auto r = run("excitation --tau 1 --phase 6.283185307179586 --rm -1 --grid 11");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(header_row(r.output), "t,P_exact,P_markovian");
  EXPECT_NE(r.output.find("\"reason\""), std::string::npos);
}

TEST(Cli, SeventeenSignificantDigits) {
  const auto r = run("excitation --tau 1 --rm 0 --grid 3 --tmax 1");
  ASSERT_EQ(r.status, 0);
  const auto rows = data_rows(r.output);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2].substr(0, 2), "1,");
  EXPECT_EQ(std::stod(rows[2].substr(2)), std::stod("0.36787944117144233"));
}

TEST(Cli, ConfigurationErrorsExitOne) {
  EXPECT_EQ(run("excitation --tau -1").status, 1);
  EXPECT_EQ(run("excitation --rm 1.5").status, 1);
  EXPECT_EQ(run("excitation --grid 1").status, 1);
  EXPECT_EQ(run("excitation --phase 1 --omega-e 2").status, 1);
  EXPECT_EQ(run("spectrum --samples 1000 --rm 0").status, 1);
  EXPECT_EQ(run("nonsense").status, 1);
  EXPECT_EQ(run("trajectory --rm -0.5 --rm-phase 0.3 --trajectories 2").status, 1);
}

TEST(Cli, OtherSubcommandsProduceTables) {
  EXPECT_EQ(header_row(run("markovian --grid 5").output), "t,P_markovian");
  EXPECT_EQ(header_row(run("dressed --grid 5").output), "round_trip_phase,delta_eff,gamma_eff");
  EXPECT_EQ(header_row(run("spectrum --rm 0 --samples 1024").output), "omega,spectral_density");
  const auto wp = run("wavepacket --times 2,4 --grid 101");
  ASSERT_EQ(wp.status, 0);
  EXPECT_EQ(header_row(wp.output),
            "x,left_density_t=2,right_density_t=2,left_scaled_t=2,left_density_t=4,"
            "right_density_t=4,left_scaled_t=4");
  EXPECT_EQ(data_rows(wp.output).size(), 101u);
  EXPECT_EQ(header_row(run("trajectory --trajectories 10 --tmax 1").output),
            "t,P_trajectory_mean,stderr");
}

TEST(Cli, CompareIsDeterministicAndPasses) {
  const auto a = scratch("compare_a.csv");
  const auto b = scratch("compare_b.csv");
  const std::string args = "compare --rm 0 --trajectories 500 --seed 12 --out ";
  ASSERT_EQ(run(args + a.string()).status, 0);
  ASSERT_EQ(run(args + b.string() + " --threads 3").status, 0);
  const std::string first = slurp(a);
  const std::string second = slurp(b);
  EXPECT_FALSE(first.empty());
  // Only the recorded thread request may differ.
  auto strip = [](std::string s) {
    const auto pos = s.find("\"threads_requested\"");
    const auto end = s.find('\n', pos);
    return s.erase(pos, end - pos);
  };
  EXPECT_EQ(strip(first), strip(second));
  EXPECT_EQ(header_row(first), "t,P_exact,P_trajectory_mean,stderr,deviation");
  EXPECT_NE(first.find("\"result\": \"PASS\""), std::string::npos);

  ASSERT_EQ(run(args + b.string()).status, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, CompareFailureExitsTwo) {
  const auto r = run("compare --rm -0.5 --trajectories 20 --tolerance 1e-6");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("\"result\": \"FAIL\""), std::string::npos);
}
