#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "paths.hpp"

namespace fs = std::filesystem;
using namespace moodcast;

namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string(MOODCAST_CLI) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int status = ::pclose(pipe);
  o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, RunIsDeterministic) {
  testkit::TempDir dir;
  const auto brief = quoted(testkit::repo_data("m1.json"));
  const auto a = cli("run --mock --brief " + brief + " --out " + quoted(dir.path() / "a"));
  const auto b = cli("run --mock --brief " + brief + " --out " + quoted(dir.path() / "b"));
  ASSERT_EQ(a.exit_code, 0);
  ASSERT_EQ(b.exit_code, 0);
  EXPECT_NE(a.out.find("manifest.json"), std::string::npos);
  const auto ma = testkit::slurp(dir.path() / "a" / "manifest.json");
  EXPECT_EQ(ma, testkit::slurp(dir.path() / "b" / "manifest.json"));
  const auto manifest = nlohmann::json::parse(ma);
  ASSERT_FALSE(manifest["scenes"].empty());
  for (const auto& s : manifest["scenes"]) {
    const auto img = s["image"].get<std::string>();
    ASSERT_TRUE(fs::exists(dir.path() / "a" / img)) << img;
    EXPECT_EQ(testkit::slurp(dir.path() / "a" / img), testkit::slurp(dir.path() / "b" / img));
  }
  for (const char* f : {"script.json", "summary.json", "script.txt"}) EXPECT_TRUE(fs::exists(dir.path() / "a" / f)) << f;
}

TEST(Cli, SeedAndConditionChangeTheResult) {
  testkit::TempDir dir;
  const auto brief = quoted(testkit::repo_data("m2.json"));
  ASSERT_EQ(cli("run --mock --brief " + brief + " --out " + quoted(dir.path() / "a")).exit_code, 0);
  ASSERT_EQ(cli("run --mock --seed 7 --brief " + brief + " --out " + quoted(dir.path() / "b")).exit_code, 0);
  ASSERT_EQ(cli("run --mock --no-mood --brief " + brief + " --out " + quoted(dir.path() / "c")).exit_code, 0);
  const auto a = testkit::slurp(dir.path() / "a" / "images" / "scene-0-0.png");
  EXPECT_NE(a, testkit::slurp(dir.path() / "b" / "images" / "scene-0-0.png"));
  EXPECT_NE(a, testkit::slurp(dir.path() / "c" / "images" / "scene-0-0.png"));
}

TEST(Cli, EvalReportsFixtureNumbers) {
  const auto text = cli("eval --annotations " + quoted(testkit::test_data("annotations.csv")));
  ASSERT_EQ(text.exit_code, 0);
  for (const char* s : {"37.5%", "75.0%", "56.2%", "1.61", "1.02", "21.9% (7/32)", "43.8% (14/32)", "p = 0.0254"}) {
    EXPECT_NE(text.out.find(s), std::string::npos) << s << "\n" << text.out;
  }
  const auto js = cli("eval --format json --annotations " + quoted(testkit::test_data("annotations.csv")));
  ASSERT_EQ(js.exit_code, 0);
  const auto j = nlohmann::json::parse(js.out);
  EXPECT_DOUBLE_EQ(j["conditions"]["with_mood"]["exact_acc"].get<double>(), 0.375);
  EXPECT_NEAR(j["t_test"]["p"].get<double>(), 0.0254, 5e-5);
}

TEST(Cli, ErrorsExitNonZero) {
  testkit::TempDir dir;
  EXPECT_NE(cli("eval --annotations " + quoted(dir.path() / "missing.csv")).exit_code, 0);
  const auto bad = dir.path() / "bad.csv";
  std::ofstream(bad) << "video_id,condition\nv,with_mood\n";
  EXPECT_EQ(cli("eval --annotations " + quoted(bad)).exit_code, 1);
  EXPECT_NE(cli("run --mock --out " + quoted(dir.path())).exit_code, 0);
  EXPECT_NE(cli("frobnicate").exit_code, 0);
}
