#include "terminal_fano/cli.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>

using namespace terminal_fano;
using namespace terminal_fano::cli;
using terminal_fano::testing::TempDir;
using terminal_fano::testing::write_script;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run check(const std::string& input, CheckMethod m = CheckMethod::prop1, Format f = Format::jsonl) {
  CliConfig cfg;
  cfg.method = m;
  cfg.format = f;
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cmd_check(cfg, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

// Runs the built executable through the shell; stdout captured, stderr dropped.
Run exe(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + TERMINAL_FANO_EXE + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

}  // namespace

TEST(Check, TerminalWithAllMethods) {
  auto r = check("1,1,0,0;0,0,1,1\n", CheckMethod::all);
  EXPECT_EQ(r.code, kOk);
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["terminal"].get<bool>());
  EXPECT_EQ(j["method"], "all");
  EXPECT_TRUE(j["agree"].get<bool>());
  EXPECT_TRUE(j["verdicts"]["polytope_oracle"].get<bool>());
}

TEST(Check, NonTerminalDefaultMethod) {
  auto r = check("1,1,0,0,0;0,0,1,1,2\n");
  EXPECT_EQ(r.code, kOk);
  Json j = Json::parse(r.out);
  EXPECT_FALSE(j["terminal"].get<bool>());
  EXPECT_EQ(j["method"], "prop1");
  EXPECT_EQ(j["witness"]["vertex"], 1);
}

TEST(Check, OneVerdictPerLineSkippingCommentsAndJsonInput) {
  auto r = check("# header\n1,1,0,0;0,0,1,1\n\n{\"a\":[1,1,0,0,0],\"b\":[0,0,1,1,2]}\n", CheckMethod::fan);
  EXPECT_EQ(r.code, kOk);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(Json::parse(ls[1])["method"], "fan_oracle");
}

TEST(Check, NonStandardInputIsStandardized) {
  auto r = check("0,0,1,1;1,1,0,0\n");
  EXPECT_EQ(r.code, kOk);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["a"], Json({0, 0, 1, 1}));
  EXPECT_EQ(j["standard"]["a"], Json({1, 1, 0, 0}));
}

TEST(Check, CsvFormat) {
  auto r = check("1,1,0,0;0,0,1,1\n1,1,0,0,0;0,0,1,1,2\n", CheckMethod::prop1, Format::csv);
  EXPECT_EQ(r.out, "1,1,0,0;0,0,1,1;1\n1,1,0,0,0;0,0,1,1,2;0\n");
}

TEST(Check, MalformedLineReportsLineNumber) {
  auto r = check("1,1,0,0;0,0,1,1\n1,1,0;0,1\n");
  EXPECT_EQ(r.code, kBadInput);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Check, InvalidMatrixIsBadInput) {
  auto r = check("2,2,0,0;0,0,1,1\n");
  EXPECT_EQ(r.code, kBadInput);
  EXPECT_NE(r.err.find("line 1"), std::string::npos);
  EXPECT_NE(r.err.find("well-formed"), std::string::npos);
}

TEST(Check, PolytopeGuardIsBadInput) {
  auto r = check("1,1,1,1,1,1,0;0,1,2,3,4,5,1\n", CheckMethod::polytope);
  EXPECT_EQ(r.code, kBadInput);
}

TEST(Bench, ReportSchema) {
  BenchReport r = run_bench(10, 7, 1000, 1);
  Json j = bench_json(r);
  for (const char* k : {"n", "bound", "sample_size", "seed", "prop1", "fan_oracle", "speedup", "disagreements"})
    EXPECT_TRUE(j.contains(k)) << k;
  for (const char* m : {"prop1", "fan_oracle"})
    for (const char* k : {"median_ms", "mean_ms", "batched_ms"}) {
      EXPECT_TRUE(j[m][k].is_number()) << m << '.' << k;
      EXPECT_GT(j[m][k].get<double>(), 0);
    }
  EXPECT_EQ(r.disagreements, 0u);
  EXPECT_THROW(run_bench(10, 7, 999, 1), std::invalid_argument);
}

TEST(Executable, CheckExitCodes) {
  EXPECT_EQ(exe("check --method all", "printf '1,1,0,0;0,0,1,1\\n' |").code, 0);
  auto r = exe("check", "printf '1,1,0,0,0;0,0,1,1,2\\n' |");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(Json::parse(r.out)["terminal"].get<bool>());
  EXPECT_EQ(exe("check", "printf 'garbage\\n' |").code, 1);
  EXPECT_EQ(exe("check --no-such-flag", "printf '' |").code, 1);
  EXPECT_EQ(exe("check --method nope", "printf '' |").code, 1);
  EXPECT_EQ(exe("").code, 1);
}

TEST(Executable, GenerateIsBalancedAndReproducible) {
  auto a = exe("generate --count 200 --bound 7 --n 10 --seed 1 --threads 1");
  auto b = exe("generate --count 200 --bound 7 --n 10 --seed 1 --threads 1");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto ls = lines(a.out);
  ASSERT_EQ(ls.size(), 201u);
  EXPECT_EQ(ls[0], std::string(kFormatHeader));
  int terminal = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) terminal += Json::parse(ls[i])["terminal"].get<bool>();
  EXPECT_EQ(terminal, 100);
  EXPECT_EQ(exe("generate --count 3").code, 1);
}

TEST(Executable, LandscapeCsvHasSixColumns) {
  auto r = exe("landscape --filter exact --count 100 --seed 2 --threads 1");
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 102u);
  EXPECT_EQ(ls[0], std::string(kFormatHeader));
  EXPECT_EQ(ls[1], std::string(kLandscapeColumns));
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_EQ(std::count(ls[i].begin(), ls[i].end(), ';'), 5) << ls[i];
}

TEST(Executable, LandscapeClassifierUnavailable) {
  EXPECT_EQ(exe("landscape --filter classifier --count 5", "env -u TERMINAL_FANO_CLASSIFIER").code, 3);
  EXPECT_EQ(exe("landscape --filter classifier --count 5 --classifier /nonexistent").code, 3);
}

TEST(Executable, LandscapeClassifierFromEnvironment) {
  TempDir dir;
  auto script = write_script(dir.path, "c.sh", "while IFS= read -r l; do echo 0.8; done < \"$1\" > \"$2\"\n");
  auto r = exe("landscape --filter classifier --count 20 --batch 32 --format jsonl",
               "TERMINAL_FANO_CLASSIFIER=" + script.string());
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 21u);
  EXPECT_EQ(Json::parse(ls[1])["prob_terminal"].get<double>(), 0.8);
}

TEST(Executable, EnumerateSmallCase) {
  auto r = exe("enumerate --n 4 --bound 1");
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 2u);
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_TRUE(Json::parse(ls[i])["terminal"].get<bool>());
  EXPECT_EQ(exe("enumerate --n 10 --bound 7").code, 1);
}

TEST(Executable, BenchWritesJson) {
  TempDir dir;
  auto path = (dir.path / "bench.json").string();
  EXPECT_EQ(exe("bench --count 1000 --n 6 -o " + path).code, 0);
  std::ifstream is(path);
  Json j = Json::parse(is);
  EXPECT_TRUE(j.contains("speedup"));
  EXPECT_EQ(exe("bench --count 10").code, 1);
}
