#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string data(const std::string& f) { return std::string(KOSZULKIT_DATA_DIR) + "/" + f; }

Run run(const std::string& args) {
  std::string cmd = std::string(KOSZULKIT_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string square_args() {
  std::string s = "--algebra " + data("square_deltaA.alg");
  for (int i = 1; i <= 4; ++i) s += " --tilting " + data("square_T" + std::to_string(i) + ".mod");
  return s;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, BuildDescribesTheSquareAlgebra) {
  auto r = run("build --algebra " + data("square_deltaA.alg"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "summary: dim 16, a = 1, symmetric, degree-zero gldim 2")) << r.out;
}

TEST(Cli, BuildDualNumbers) {
  auto r = run("build --algebra " + data("dual_numbers.alg"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "dim 2, a = 1, symmetric")) << r.out;
}

TEST(Cli, InhomogeneousInputIsAnInputError) {
  EXPECT_EQ(run("build --algebra " + data("inhomogeneous.alg")).code, 2);
  EXPECT_EQ(run("build --algebra " + data("no_such_file.alg")).code, 2);
}

TEST(Cli, UnknownTheoremIsRejected) { EXPECT_EQ(run("verify no-such-theorem " + square_args()).code, 2); }

TEST(Cli, CharacterizationAgreesOnTheSquareExample) {
  auto r = run("verify characterization --n 2 " + square_args());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "result: agree")) << r.out;
}

TEST(Cli, TrivialExtensionDualOfKronecker) {
  auto r = run("verify trivext-dual --n 1 --degree-max 5 --algebra " + data("kronecker.alg"));
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, ParameterConsistencyForDeltaA2) {
  auto r = run("verify param-consistency --n 2 --algebra " + data("delta_a2.alg"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "m: (0,1)")) << r.out;
  EXPECT_TRUE(contains(r.out, "sigma: (0,0)")) << r.out;
}

TEST(Cli, ExtTableOverDualNumbersIsDiagonal) {
  auto r = run("ext --json --i-max 4 --algebra " + data("dual_numbers.alg") + " --M " + data("dual_simple.mod") +
               " --N " + data("dual_simple.mod"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  int j_min = j["j_min"];
  const auto& dims = j["dims"];
  ASSERT_EQ(dims.size(), 5u);
  for (size_t i = 0; i < dims.size(); ++i)
    for (size_t c = 0; c < dims[i].size(); ++c)
      EXPECT_EQ(dims[i][c].get<int>(), static_cast<int>(i) == j_min + static_cast<int>(c) ? 1 : 0) << i << "," << c;
}

TEST(Cli, PreprojectiveOfA2) {
  auto r = run("preprojective --n 1 --degree-max 4 --algebra " + data("a2.alg"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "dims: 3 1 0 0 0")) << r.out;
}

TEST(Cli, VeroneseOfOrderOneIsTheDual) {
  auto r = run("veronese --n 1 --r 1 --degree-max 3 --algebra " + data("dual_numbers.alg") + " --tilting " +
               data("dual_simple.mod"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "identical to the dual: true")) << r.out;
}

TEST(Cli, ClassicAlmostKoszulCubic) {
  auto r = run("koszul --classic --algebra " + data("cubic.alg"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "(g, l): 2 1")) << r.out;
}

TEST(Cli, OutputIsDeterministic) {
  std::string args = "verify serre-identity --n 1 --algebra " + data("cubic.alg") + " --tilting " +
                     data("cubic_simple.mod");
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutWritesTheReport) {
  auto path = std::filesystem::temp_directory_path() / "koszulkit_cli_out.json";
  std::filesystem::remove(path);
  auto r = run("build --json --algebra " + data("cubic.alg") + " --out " + path.string());
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j["dim"], 3);
  std::filesystem::remove(path);
}
