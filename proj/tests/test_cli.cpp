#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

const std::string kCli = XTRELLIS_CLI;
const std::string kData = XTRELLIS_DATA_DIR;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

TEST(Cli, ConvFreeDistance) {
  const auto r = run("--format json conv freedist --spec " + kData + "/g.json");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["free_distance"], 5);
}

TEST(Cli, ConvColumnDistancesCsv) {
  const auto r = run("--format csv conv coldist --spec " + kData + "/g.json --j 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "j,column_distance,bound\n0,2,2\n1,3,3\n2,3,4\n3,4,5\n4,4,6\n5,5,7\n");
}

TEST(Cli, ConvSearchOverGF4) {
  const auto r = run("--format json conv search --n 2 --k 1 --m 1 --p 2 --e 2");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["profile"], nlohmann::json({2, 3, 4}));
  EXPECT_TRUE(j["exhaustive"].get<bool>());
}

TEST(Cli, TrellisExample) {
  const auto r = run("--format json trellis example1 --q 8 --M 4 --n 2 --j 1");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["codewords"], 16);
  EXPECT_EQ(j["column_distance"], 4);
  EXPECT_EQ(j["convolutional_analogue"]["exact"], "11/3");
  EXPECT_EQ(j["column_bound"]["exact"], "13/3");
  EXPECT_EQ(j["column_bound"]["floor"], 4);
}

TEST(Cli, TrellisFiles) {
  EXPECT_EQ(run("trellis bounds --spec " + kData + "/conv_1_5_7.trellis --j 5").code, 0);
  EXPECT_EQ(run("trellis validate --spec " + kData + "/nondeterministic.trellis").code, 0);
  EXPECT_EQ(run("trellis coldist --spec " + kData + "/nondeterministic.trellis").code, 2);
  EXPECT_EQ(run("trellis bounds --spec " + kData + "/nondeterministic.trellis").code, 2);
}

TEST(Cli, Graphs) {
  const auto gen = run("graph gen --type complete --n 3");
  ASSERT_EQ(gen.code, 0);
  EXPECT_EQ(gen.out.substr(0, 8), "3 3\n1 1\n");
  const auto g = run("--format json graph gamma --graph " + kData + "/c6.graph");
  ASSERT_EQ(g.code, 0);
  EXPECT_NEAR(json_of(g)["gamma"].get<double>(), 0.5, 1e-9);
  const auto m = run("--format json graph mix --graph " + kData + "/random12_3.graph --trials 500");
  ASSERT_EQ(m.code, 0);
  EXPECT_EQ(json_of(m)["violations"], 0);
}

TEST(Cli, ConstructMicro) {
  const auto r = run("--format json construct report --spec " + kData + "/micro.json");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["k_tilde"], 1);
  EXPECT_EQ(j["report"]["packed_column"][0], 2);
  EXPECT_TRUE(j["report"]["all_ok"].get<bool>());
  EXPECT_EQ(run("construct build --spec builtin:micro").code, 0);
  EXPECT_EQ(run("construct verify --spec builtin:micro --horizon 2 --samples 50").code, 0);
}

TEST(Cli, ReportsAreByteIdentical) {
  const auto a = run("--format json --seed 3 construct report --spec builtin:micro --samples 100");
  const auto b = run("--format json --seed 3 construct report --spec builtin:micro --samples 100");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = run("--format json --seed 3 --threads 3 construct report --spec builtin:micro --samples 100");
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, NegativeControls) {
  EXPECT_EQ(run("construct report --spec " + kData + "/micro_tampered_rank.json").code, 2);
  EXPECT_EQ(run("construct verify --spec " + kData + "/micro_tampered_perturb.json").code, 2);
  EXPECT_EQ(run("construct report --spec builtin:micro --tamper perturb").code, 2);
  EXPECT_EQ(run("verify-all --fixtures " + kData + "/fixtures_tampered").code, 2);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run("construct report --spec missing.json").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("conv freedist").code, 1);
  EXPECT_EQ(run("--format xml conv freedist --spec " + kData + "/g.json").code, 1);
  EXPECT_EQ(run("field --p 4").code, 1);
  EXPECT_EQ(run("verify-all --fixtures /nonexistent/dir").code, 1);
}

TEST(Cli, FieldAndBlock) {
  const auto f = run("--format json field --p 3 --e 2");
  ASSERT_EQ(f.code, 0);
  EXPECT_EQ(json_of(f)["q"], 9);
  EXPECT_TRUE(json_of(f)["axioms"]["ok"].get<bool>());
  const auto b = run("--format json block --spec " + kData + "/hamming7.json");
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(json_of(b)["min_distance"], 3);
}

TEST(Cli, VerifyAll) {
  const auto r = run("--format json verify-all --fixtures " + kData + "/fixtures --samples 200");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["passed"], j["total"]);
  EXPECT_GT(j["total"].get<int>(), 15);
}

}  // namespace
