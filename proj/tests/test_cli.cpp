#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(CURVKIT_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, List) {
  Result r = run("list --format json");
  ASSERT_EQ(r.code, 0);
  json ids = json::parse(r.out);
  EXPECT_NE(std::find(ids.begin(), ids.end(), "gppwave"), ids.end());
}

TEST(Cli, Compute) {
  Result r = run("compute plane-wave --tensor ricci --tensor riemann --format json");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["tensors"]["ricci"]["components"]["11"], "2*a1 + 2*a2");
  EXPECT_EQ(j["tensors"]["riemann"]["name"], "R");
  Result text = run("compute minkowski --tensor riemann");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("all components vanish"), std::string::npos);
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check pp-wave").code, 0);
  EXPECT_EQ(run("check gppwave --tables").code, 1);
  EXPECT_EQ(run("check plane-wave --suite no-such-suite").code, 2);
  EXPECT_EQ(run("check no-such-metric").code, 2);
  EXPECT_EQ(run("check pp-wave --format yaml").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("compute --metric-file /nonexistent.json").code, 2);
}

TEST(Cli, MetricFile) {
  Result r = run(std::string("check --metric-file ") + CURVKIT_CATALOG_DIR + "/plane-wave.json --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, DeterministicOutput) {
  std::string args = "check gppwave --suite structure --format json --seed 11";
  Result a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, Compare) {
  Result r = run("compare robinson-trautman gppwave --format json");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_TRUE(j["expected"]["missing"].empty());
  EXPECT_NE(std::find(j["dissimilarities"].begin(), j["dissimilarities"].end(), "roter"), j["dissimilarities"].end());
}
