#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ilab/cli.hpp"

using namespace ilab;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "ilab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ilab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, ExitCodeMatrix) {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases{
      {{"verify-theorem", "--id", "A_p+1", "--p", "5"}, 0},
      {{"verify-theorem", "--id", "A_p+5", "--p", "23"}, 3},
      {{"verify-theorem", "--id", "A_p", "--p", "4"}, 2},
      {{"verify-theorem", "--id", "A_p", "--p", "five"}, 2},
      {{"verify-theorem", "--id", "A_p+9", "--p", "5"}, 2},
      {{"verify-theorem", "--id", "A_p+1"}, 2},
      {{"verify-theorem", "--id", "A_p+1", "--p", "5", "--bogus"}, 2},
      {{"enumerate-targets", "--d", "6", "--p", "5"}, 0},
      {{"search-witness", "--p", "5", "--t", "2", "--s", "1", "--r", "2", "--m", "1,1"}, 0},
      {{"search-witness", "--p", "5", "--t", "2", "--s", "1", "--r", "3", "--m", "1,1"}, 2},
      {{"search-witness", "--p", "5", "--t", "2", "--m", "1,1"}, 2},
      {{"search-witness", "--p", "5", "--t", "1", "--n", "6", "--m", "2"}, 2},
      {{"search-witness", "--p", "5", "--t", "1", "--n", "5,1", "--m", "1"}, 2},
      {{"search-witness", "--p", "23", "--t", "4", "--n", "9,9,9", "--m", "4", "--field", "Fp2", "--budget", "10"}, 3},
      {{"analyze-cover", "--spec", "/nonexistent/cover.txt"}, 2},
      {{"group", "--d", "5", "--gen", "(1 2 3 4 5)", "--gen", "(1 2)"}, 0},
      {{"group", "--d", "5", "--gen", "(1 9)"}, 2},
      {{}, 2},
      {{"--help"}, 0},
      {{"verify-theorem", "--help"}, 0},
  };
  for (const auto& c : cases) {
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(call(c.args).code, c.code) << joined;
  }
}

TEST(Cli, SideConditionReasonIsMachineReadable) {
  const auto r = call({"verify-theorem", "--id", "A_p+5", "--p", "23"});
  const auto j = nlohmann::json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_EQ(j["error"], "SideConditionViolated");
  EXPECT_EQ(j["exit"], 3);
}

TEST(Cli, EnumerateTargetsPrintsTwoShapes) {
  const auto r = call({"enumerate-targets", "--d", "6", "--p", "5"});
  EXPECT_EQ(lines(r.out), 2);
  EXPECT_NE(r.out.find("wild p=5 d=6 i=2 omega=()"), std::string::npos);
}

TEST(Cli, EmptySearchSaysSo) {
  const auto r = call({"search-witness", "--p", "5", "--t", "1", "--n", "4,1,1", "--m", "1", "--field", "Fp2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "no witnesses found\n");
}

TEST(Cli, AnalyzeCoverTextAndJson) {
  const auto spec = scratch("cover.txt");
  std::ofstream(spec) << "p=5 t=0 s=2 r=0 n=4,1 m= alpha=0,1 beta= field=Fp\n";
  const auto out = scratch("out.json");
  std::filesystem::remove(out);
  const auto r = call({"analyze-cover", "--spec", spec.string(), "--json", out.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("upper jump: 1/4"), std::string::npos);
  EXPECT_NE(r.out.find("inertia over infinity: wild p=5 d=5 i=1 omega=()"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["jump"], "1/4");
  EXPECT_EQ(j["over0"], "(4,1)");
  for (const auto& e : std::filesystem::directory_iterator(out.parent_path())) {
    EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos) << e.path();
  }
}

TEST(Cli, AnalyzeCoverFailingAssumption) {
  const auto spec = scratch("bad.txt");
  std::ofstream(spec) << "p=5 t=1 s=1 r=1 n=6 m=1 alpha=1 beta=0 field=Fp\n";
  std::ofstream(scratch("bad2.txt")) << "p=5 t=2 s=2 r=1 n=6,1 m=2 alpha=1,2 beta=0 field=Fp\n";
  EXPECT_EQ(call({"analyze-cover", "--spec", spec.string()}).code, 0);
  EXPECT_EQ(call({"analyze-cover", "--spec", scratch("bad2.txt").string()}).code, 1);
  std::ofstream(scratch("junk.txt")) << "p=5 garbage\n";
  EXPECT_EQ(call({"analyze-cover", "--spec", scratch("junk.txt").string()}).code, 2);
}

TEST(Cli, VerifyJsonIsDeterministicAndSorted) {
  const auto a = scratch("a.json"), b = scratch("b.json");
  const std::vector<std::string> args{"verify-theorem", "--id", "A_p+3", "--id", "A_p+1", "--p", "11", "--p", "5",
                                      "--json"};
  auto x = args, y = args;
  x.push_back(a.string());
  y.push_back(b.string());
  EXPECT_EQ(call(x).code, 0);
  EXPECT_EQ(call(y).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto j = nlohmann::json::parse(slurp(a));
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0]["theorem"], "A_p+1");
  EXPECT_EQ(j[0]["p"], 5);
  EXPECT_EQ(j[1]["p"], 11);
  EXPECT_EQ(j[3]["theorem"], "A_p+3");
}

TEST(Cli, JsonFormatOnStdout) {
  const auto r = call({"verify-theorem", "--id", "S_p", "--p", "5", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["overall"], "pass");
}
