#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(GFO_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gfortho_cli_" + std::to_string(getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

const std::string golden = std::string(GFO_TEST_DATA) + "/z97_w0_a.txt";

}  // namespace

TEST_F(Cli, GenWorkedExampleFromGammaFile) {
  write("g.json", R"({"field":{"p":5},"n":2,"N":1,"gamma":[[1]]})");
  const CliResult r = run("gen --p 5 --n 2 --N 1 --gamma-in " + path("g.json") + " --emit w0");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("data"), json({0, 4, 4, 0}));
  const CliResult t = run("gen --gamma-in " + path("g.json") + " --emit w0 --format text");
  EXPECT_EQ(t.out, "0 4\n4 0\n");
}

TEST_F(Cli, GenSeededZ97IsOrthogonalSymmetric) {
  const CliResult r = run("gen --p 97 --n 7 --N 1 --seed 7 --emit w0 --out " + path("w0.json"));
  ASSERT_EQ(r.code, 0);
  const CliResult v = run("verify " + path("w0.json"));
  EXPECT_EQ(v.code, 0);
  const json j = json::parse(v.out);
  EXPECT_TRUE(j.at("orthogonal").get<bool>());
  EXPECT_TRUE(j.at("symmetric").get<bool>());
  EXPECT_EQ(run("gen --p 97 --n 7 --N 1 --seed 7 --emit w0").out, read("w0.json"));
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("gen --p 4 --n 2 --N 1 --seed 1").code, 2);
  EXPECT_EQ(run("gen --p 5 --n 2 --N 1").code, 2);
  EXPECT_EQ(run("gen --p 5 --n 2 --N 1 --seed 1 --emit nope").code, 2);
  EXPECT_EQ(run("screen --p 5 --n 3 --N 1 --mode random --target-count 3").code, 2);
  EXPECT_EQ(run("screen --p 5 --n 4 --N 4").code, 2);  // over budget
  EXPECT_EQ(run("stats --p 7 --n 10 --N 1 --trials 0 --seed 1").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(Cli, SingularDeltaExitsOneWithGenerators) {
  write("g.json", R"({"field":{"p":2},"n":2,"N":1,"gamma":[[1]]})");
  const std::string cmd = std::string(GFO_CLI) + " gen --gamma-in " + path("g.json") + " 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[4096];
  std::string err;
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) err.append(buf, n);
  const int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 1);
  EXPECT_NE(err.find("SingularDelta"), std::string::npos);
  EXPECT_NE(err.find("\"gamma\":[[1]]"), std::string::npos);
}

TEST_F(Cli, VerifyGoldenAndAlteredFiles) {
  const CliResult ok = run("verify --p 97 --format text " + golden);
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(json::parse(ok.out).at("orthogonal").get<bool>());

  std::ifstream in(golden);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  text.replace(0, 2, "84");
  write("bad.txt", text);
  const CliResult bad = run("verify --p 97 --format text " + path("bad.txt"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(json::parse(bad.out).at("orthogonal").get<bool>());

  write("id.json", R"({"field":{"p":5},"rows":3,"cols":3,"data":[1,0,0,0,1,0,0,0,1]})");
  const CliResult id = run("verify " + path("id.json"));
  EXPECT_EQ(id.code, 0);
  EXPECT_EQ(json::parse(id.out), json({{"orthogonal", true}, {"symmetric", true}, {"det", 1}}));

  write("junk.json", "{not json");
  EXPECT_EQ(run("verify " + path("junk.json")).code, 2);
}

TEST_F(Cli, EveryEmittedArtifactVerifies) {
  ASSERT_EQ(run("gen --p 97 --n 5 --N 3 --seed 3 --emit gamma,u,w0,w1,w,report --out " + path("all.json")).code, 0);
  const CliResult v = run("verify " + path("all.json"));
  EXPECT_EQ(v.code, 0);
  const json j = json::parse(v.out);
  EXPECT_TRUE(j.at("u").at("paraunitary").get<bool>());
  EXPECT_TRUE(j.at("u").at("u1_is_identity").get<bool>());
  EXPECT_EQ(j.at("u").at("det_diagnostic"), "pass");
  EXPECT_TRUE(j.at("w").at("orthogonal").get<bool>());
  EXPECT_TRUE(j.at("w1").at("rows_orthonormal").get<bool>());
}

TEST_F(Cli, RecoverRoundTrip) {
  ASSERT_EQ(run("gen --p 97 --n 5 --N 3 --seed 11 --emit u --out " + path("u.json")).code, 0);
  ASSERT_EQ(run("recover " + path("u.json") + " --out " + path("g.json")).code, 0);
  const CliResult original = run("gen --p 97 --n 5 --N 3 --seed 11 --emit gamma");
  EXPECT_EQ(json::parse(read("g.json")), json::parse(original.out));
  // gen -> recover -> gen reproduces U
  EXPECT_EQ(run("gen --gamma-in " + path("g.json") + " --emit u").out, read("u.json"));

  write("bad_u.json", R"({"field":{"p":5},"n":2,"k1":0,"coeff_mats":[[1,1,0,1]]})");
  EXPECT_EQ(run("recover " + path("bad_u.json")).code, 1);
}

TEST_F(Cli, ScreenStatsBench) {
  const CliResult s = run("screen --p 5 --n 3 --N 1 --dump-keys " + path("keys.txt"));
  ASSERT_EQ(s.code, 0);
  const json j = json::parse(s.out);
  const auto distinct = j.at("distinct_count").get<std::size_t>();
  std::ifstream keys(path("keys.txt"));
  std::size_t lines = 0;
  for (std::string line; std::getline(keys, line);) ++lines;
  EXPECT_EQ(lines, distinct);
  EXPECT_EQ(j.at("candidates_tried").get<std::uint64_t>(),
            j.at("failures").get<std::uint64_t>() + j.at("successes").get<std::uint64_t>());

  const CliResult r = run("screen --p 5 --n 3 --N 2 --mode random --closure on --target-count 20 --seed 1 --curve-out " +
                    path("curve.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(read("curve.csv").rfind("draws,distinct\n", 0), 0u);
  const CliResult miss = run("screen --p 2 --n 3 --N 1 --mode random --target-count 2 --seed 1 --max-draws 100");
  EXPECT_EQ(miss.code, 1);
  EXPECT_EQ(json::parse(miss.out).at("distinct_count"), 1);

  const CliResult st = run("stats --p 7 --n 100 --N 1 --trials 1000 --seed 1");
  ASSERT_EQ(st.code, 0);
  const auto f = json::parse(st.out).at("failures").get<int>();
  EXPECT_GE(f, 100);
  EXPECT_LE(f, 190);
  EXPECT_EQ(json::parse(run("stats --p 7 --n 100 --N 1 --trials 1000 --seed 1 --workers 3").out).at("failures"), f);

  const CliResult b = run("bench --p 97 --n 1,40 --N 1 --seed 1");
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(json::parse(b.out).at("rows").at(0).at("mult_count"), 0);
}

TEST_F(Cli, WorkersFromEnvironment) {
  const std::string cmd = "WORKERS=0 " + std::string(GFO_CLI) + " stats --p 7 --n 5 --N 1 --seed 1 >/dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 2);
  const std::string ok = "WORKERS=2 " + std::string(GFO_CLI) + " stats --p 7 --n 5 --N 1 --seed 1 >/dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(ok.c_str())), 0);
}
