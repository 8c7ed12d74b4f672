#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Outcome {
  int exit_code;
  std::string out;
};

Outcome bsv(const std::string& args) {
  std::string cmd = std::string(BSV_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scenario(const std::string& name) { return std::string(BSV_SCENARIO_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(Cli, CuspPresetVerifiesAndFindsTheBFunction) {
  Outcome r = bsv("preset cusp-fx");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("[verified] (x dx + 1/2) on x/g"), std::string::npos);
  EXPECT_NE(r.out.find("[verified] x dx on y/g"), std::string::npos);
  EXPECT_NE(r.out.find("b(s) = (s + 1/2)*(s + 1)"), std::string::npos);
}

TEST(Cli, NodePresetGivesTheLcm) {
  Outcome r = bsv("preset node --json --no-timestamp");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "preset");
  EXPECT_EQ(j["results"]["combine"]["b_s"], "s*(s + 1)");
}

TEST(Cli, FalseIdentityExitsOneWithResidual) {
  Outcome r = bsv("verify " + scenario("extra/false-identity.toml"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("REFUTED"), std::string::npos);
  EXPECT_NE(r.out.find("residual (lhs - rhs): -3/g + (2*y^2 + 2*z^2)/g^2"), std::string::npos) << r.out;
}

TEST(Cli, JsonIsByteStableWithoutTimestamp) {
  for (const char* f : {"cusp-fx.toml", "quadric-n3.toml", "extra/cusp-graph.toml"}) {
    Outcome a = bsv("all " + scenario(f) + " --json --no-timestamp");
    Outcome b = bsv("all " + scenario(f) + " --json --no-timestamp");
    EXPECT_EQ(a.out, b.out) << f;
    auto j = nlohmann::json::parse(a.out);
    EXPECT_FALSE(j.contains("timestamp"));
    EXPECT_FALSE(j.contains("timing_ms"));
    EXPECT_TRUE(j["input_digest"].get<std::string>().starts_with("fnv1a64:"));
  }
  auto with_time = nlohmann::json::parse(bsv("search " + scenario("cusp-fx.toml") + " --json").out);
  EXPECT_TRUE(with_time.contains("timestamp"));
  EXPECT_TRUE(with_time.contains("timing_ms"));
}

TEST(Cli, CapFlagsAreApplied) {
  Outcome r = bsv("search " + scenario("cusp-fx.toml") + " --json --no-timestamp --pole-cap 3 --dop-cap 2 --coeff-deg-cap 9");
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["caps"]["pole"], 3);
  EXPECT_EQ(j["caps"]["dop"], 2);
  EXPECT_EQ(j["caps"]["coeff_deg"], 9);
}

TEST(Cli, EmitMatchesTheShippedFile) {
  EXPECT_EQ(bsv("preset tau-x1-x2 --n 4 --emit").out, slurp(scenario("tau-x1-x2-n4.toml")));
  EXPECT_EQ(bsv("preset delta-zero --emit").out, slurp(scenario("delta-zero.toml")));
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(bsv("verify /nonexistent/file.toml").exit_code, 2);
  EXPECT_EQ(bsv("preset no-such-preset").exit_code, 2);
  EXPECT_EQ(bsv("preset quadric-general --n 9").exit_code, 2);
  EXPECT_EQ(bsv("frobnicate " + scenario("node.toml")).exit_code, 2);
  EXPECT_EQ(bsv("certify " + scenario("node.toml")).exit_code, 2);
  Outcome list = bsv("preset --list");
  EXPECT_EQ(list.exit_code, 0);
  EXPECT_NE(list.out.find("quadric-general (--n 3..6)"), std::string::npos);
}

TEST(Cli, LedgerScenario) {
  Outcome r = bsv("jump " + scenario("extra/ledger-cusp.toml"));
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("lct = 5/6"), std::string::npos);
}
